//! Cohen's generalized Ramanujan sum
//!
//! ```text
//! c_k^(s)(j) = sum_{1 <= m <= k^s, (m, k^s)_s = 1} exp(2 pi i j m / k^s)
//! ```
//!
//! evaluated three ways: the closed form `J_s(k) mu(d) / J_s(d)` with
//! `d^s = k^s / (j, k^s)_s`, the Möbius rearrangement
//! `sum_{d | k, d^s | j} d^s mu(k / d)`, and the literal exponential sum in
//! floating point. The first is the evaluator; the other two are oracles.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Roots;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{divisors, factorize, generalized_gcd, jordan_totient, mobius};
use crate::{Error, Result};

/// Largest `k^s` accepted by the literal oracles and the partial-sum scans.
pub const ORACLE_GUARD: u64 = 10_000;

/// Allowed distance of the exponential sum from the nearest integer, in both
/// the real and imaginary parts.
pub const EXPONENTIAL_TOLERANCE: f64 = 1e-6;

/// A point `(k, s, j)` with `j` reduced into `0 <= j < k^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CrsQuery {
    k: u64,
    s: u32,
    j: u64,
    modulus: u64,
}

impl CrsQuery {
    pub fn new(k: u64, s: u32, j: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::NotPositive("k"));
        }
        if s == 0 {
            return Err(Error::NotPositive("s"));
        }
        let modulus = k
            .checked_pow(s)
            .ok_or_else(|| Error::Overflow(format!("{k}^{s}")))?;
        Ok(CrsQuery {
            k,
            s,
            j: j % modulus,
            modulus,
        })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// The canonical residue of `j` modulo `k^s`.
    pub fn j(&self) -> u64 {
        self.j
    }

    /// `k^s`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `j`, except that the residue `0` is represented by `k^s`.
    pub fn representative(&self) -> u64 {
        if self.j == 0 {
            self.modulus
        } else {
            self.j
        }
    }
}

/// A closed-form value with the intermediate quantities it was derived from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrsEvaluation {
    pub query: CrsQuery,
    pub value: i128,
    /// `(j, k^s)_s`
    pub gcd_s: u64,
    /// The divisor of `k` with `d^s * gcd_s = k^s`.
    pub d: u64,
}

fn to_i128(n: &BigUint, what: &str) -> Result<i128> {
    n.to_i128().ok_or_else(|| Error::Overflow(what.to_string()))
}

/// `c_k^(s)(j) = J_s(k) mu(d) / J_s(d)` where `d^s = k^s / (j, k^s)_s`.
pub fn crs_closed(q: &CrsQuery) -> Result<CrsEvaluation> {
    let gcd_s = generalized_gcd(q.representative(), q.modulus, q.s)?;
    if q.modulus % gcd_s != 0 {
        return Err(Error::Inconsistent(format!(
            "(j, k^s)_s = {gcd_s} does not divide k^s = {}",
            q.modulus
        )));
    }
    let d_pow = q.modulus / gcd_s;
    let d = d_pow.nth_root(q.s);
    if d.checked_pow(q.s) != Some(d_pow) {
        return Err(Error::Inconsistent(format!(
            "k^s / (j, k^s)_s = {d_pow} is not a perfect {}-th power",
            q.s
        )));
    }
    let mu = mobius(d)?;
    let value = if mu == 0 {
        0
    } else {
        let jk = factorize(q.k)?.jordan_totient(q.s);
        let jd = jordan_totient(q.s, d)?;
        if !(&jk % &jd).is_zero() {
            return Err(Error::Inconsistent(format!(
                "J_s(d) = {jd} does not divide J_s(k) = {jk}"
            )));
        }
        mu as i128 * to_i128(&(jk / jd), "J_s(k) / J_s(d)")?
    };
    Ok(CrsEvaluation {
        query: *q,
        value,
        gcd_s,
        d,
    })
}

/// Convenience wrapper returning only the value of [`crs_closed`].
pub fn crs(k: u64, s: u32, j: u64) -> Result<i128> {
    Ok(crs_closed(&CrsQuery::new(k, s, j)?)?.value)
}

fn check_guard(modulus: u64) -> Result<()> {
    if modulus > ORACLE_GUARD {
        return Err(Error::Guard {
            what: "k^s",
            value: modulus.to_string(),
            limit: ORACLE_GUARD,
        });
    }
    Ok(())
}

/// The defining exponential sum, summed literally in `f64`.
///
/// Fails with [`Error::Tolerance`] if the result is not within
/// [`EXPONENTIAL_TOLERANCE`] of a real integer.
pub fn crs_exponential_oracle(q: &CrsQuery) -> Result<Complex64> {
    check_guard(q.modulus)?;
    let modulus = q.modulus;
    let mut sum = Complex64::new(0.0, 0.0);
    for m in 1..=modulus {
        if generalized_gcd(m, modulus, q.s)? != 1 {
            continue;
        }
        // reduce the phase exactly before going to floating point
        let t = (q.j as u128 * m as u128 % modulus as u128) as f64;
        sum += Complex64::from_polar(1.0, std::f64::consts::TAU * t / modulus as f64);
    }
    let off_integer = (sum.re - sum.re.round()).abs();
    if sum.im.abs() >= EXPONENTIAL_TOLERANCE || off_integer >= EXPONENTIAL_TOLERANCE {
        return Err(Error::Tolerance(format!(
            "k={}, s={}, j={}: sum = {} + {}i",
            q.k, q.s, q.j, sum.re, sum.im
        )));
    }
    Ok(sum)
}

/// [`crs_exponential_oracle`] rounded to the integer it approximates.
pub fn crs_exponential_rounded(q: &CrsQuery) -> Result<i128> {
    Ok(crs_exponential_oracle(q)?.re.round() as i128)
}

/// `sum_{d | k, d^s | j} d^s mu(k / d)`, with `j = k^s` standing in for `j = 0`.
pub fn crs_divisor_oracle(q: &CrsQuery) -> Result<i128> {
    let j = q.representative();
    let mut total = 0i128;
    for d in divisors(q.k)? {
        let ds = d.pow(q.s);
        if j % ds == 0 {
            total += ds as i128 * mobius(q.k / d)? as i128;
        }
    }
    Ok(total)
}

/// One full period `c_k^(s)(1), ..., c_k^(s)(k^s)` with its prefix sums.
#[derive(Debug, Clone)]
pub struct PeriodTable {
    k: u64,
    s: u32,
    prefix: Vec<i128>,
}

impl PeriodTable {
    pub fn new(k: u64, s: u32) -> Result<Self> {
        let modulus = CrsQuery::new(k, s, 0)?.modulus();
        check_guard(modulus)?;
        let mut prefix = Vec::with_capacity(modulus as usize + 1);
        prefix.push(0i128);
        let mut acc = 0i128;
        for j in 1..=modulus {
            acc += crs(k, s, j)?;
            prefix.push(acc);
        }
        Ok(PeriodTable { k, s, prefix })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn modulus(&self) -> u64 {
        (self.prefix.len() - 1) as u64
    }

    /// `c_k^(s)(j)` for `1 <= j <= k^s`.
    pub fn value(&self, j: u64) -> i128 {
        self.prefix[j as usize] - self.prefix[j as usize - 1]
    }

    pub fn values(&self) -> impl Iterator<Item = i128> + '_ {
        self.prefix.windows(2).map(|w| w[1] - w[0])
    }

    /// `sum_{j=1}^{m} c_k^(s)(j)` for `0 <= m <= k^s`.
    pub fn prefix(&self, m: u64) -> i128 {
        self.prefix[m as usize]
    }

    /// Sum over one full period.
    pub fn period_sum(&self) -> i128 {
        *self.prefix.last().expect("table has at least one entry")
    }
}

/// `sum_{j=1}^{m} c_k^(s)(j)`.
///
/// Whole periods contribute `0` when `k >= 2` and `k^s` when `k = 1`, so only
/// the remainder `m mod k^s` is summed term by term.
pub fn crs_partial_sum(k: u64, s: u32, m: &BigUint) -> Result<BigInt> {
    let modulus = CrsQuery::new(k, s, 0)?.modulus();
    if k == 1 {
        return Ok(BigInt::from(m.clone()));
    }
    let rem = (m % modulus).to_u64().expect("residue fits u64");
    let mut total = 0i128;
    for j in 1..=rem {
        total += crs(k, s, j)?;
    }
    Ok(BigInt::from(total))
}

/// Result of scanning `|sum_{j <= cutoff} c_k^(s)(j)|` over a set of cutoffs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxPartial {
    pub max_abs: u128,
    /// Smallest scan index attaining the maximum: `N` for the `N^s` scans,
    /// the cutoff itself for [`crs_max_partial_all_cutoffs`].
    pub argmax: u64,
}

/// `max_N |sum_{j=1}^{N^s} c_k^(s)(j)|`.
///
/// The partial sums of a period-`k^s` sequence with zero period sum are
/// themselves periodic in the cutoff, and `(N + k^s)^s = N^s (mod k^s)`, so
/// `N = 1..=k^s` already sees every value. `k = 1` is unbounded.
pub fn crs_max_partial(k: u64, s: u32) -> Result<MaxPartial> {
    let modulus = CrsQuery::new(k, s, 0)?.modulus();
    crs_max_partial_scan(k, s, modulus)
}

/// Same as [`crs_max_partial`] with an explicit scan range `N = 1..=n_max`.
pub fn crs_max_partial_scan(k: u64, s: u32, n_max: u64) -> Result<MaxPartial> {
    if k == 1 {
        return Err(Error::Unbounded);
    }
    let table = PeriodTable::new(k, s)?;
    let modulus = table.modulus() as u128;
    let mut best = MaxPartial {
        max_abs: 0,
        argmax: 1,
    };
    for n in 1..=n_max {
        let cutoff = BigUint::from(n)
            .modpow(&BigUint::from(s), &BigUint::from(modulus))
            .to_u64()
            .expect("residue fits u64");
        let abs = table.prefix(cutoff).unsigned_abs();
        if abs > best.max_abs {
            best = MaxPartial {
                max_abs: abs,
                argmax: n,
            };
        }
    }
    Ok(best)
}

/// `max_M |sum_{j=1}^{M} c_k^(s)(j)|` over every cutoff `M`, not just `s`-th
/// powers. This is the quantity the Abel summation bound actually controls.
pub fn crs_max_partial_all_cutoffs(k: u64, s: u32) -> Result<MaxPartial> {
    if k == 1 {
        return Err(Error::Unbounded);
    }
    let table = PeriodTable::new(k, s)?;
    let mut best = MaxPartial {
        max_abs: 0,
        argmax: 1,
    };
    for m in 1..=table.modulus() {
        let abs = table.prefix(m).unsigned_abs();
        if abs > best.max_abs {
            best = MaxPartial {
                max_abs: abs,
                argmax: m,
            };
        }
    }
    Ok(best)
}
