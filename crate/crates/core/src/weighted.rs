//! The weighted power-sum average
//!
//! ```text
//! W(k, r, s) = k^{-s(r+1)} * sum_{j=1}^{k^s} j^r c_k^(s)(j)
//! ```
//!
//! computed three independent ways:
//!
//! - directly, from a full period of `c_k^(s)` ([`weighted_sum_direct`]);
//! - by the Bernoulli closed form
//!   `J_s(k)/(2k^s) + 1/(r+1) sum_{m=1}^{floor(r/2)} C(r+1, 2m) B_{2m} J_{2ms}(k)/k^{2ms}`
//!   ([`weighted_average_closed`]);
//! - by the delta form `J_s(k)/k^s - 1/(r+1) - sum_{d | k, d > 1} mu(d) delta_{d^s, r}`
//!   ([`weighted_average_delta_form`]), where `delta_{D, r}` is the gap between
//!   `1/(r+1)` and the lower Riemann sum `S_r(D) / D^{r+1}`.
//!
//! The closed and delta forms only hold for `k >= 2`. At `k = 1` the closed
//! form evaluates to `1 - 1/(r+1)` while the sum itself is `1`;
//! [`weighted_average_value`] dispatches `k = 1` to the direct value.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Signed, Zero};

use crate::arith::{factorize, Factorization};
use crate::crs::{PeriodTable, ORACLE_GUARD};
use crate::exact::{
    bernoulli_number, binomial, from_biguint, integer, power_sum, ratio, BigRational,
};
use crate::{Error, Result};

/// The closed-form value split into its parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedAverageBreakdown {
    pub k: BigUint,
    pub r: u32,
    pub s: u32,
    /// `leading + bernoulli_tail`
    pub value: BigRational,
    /// `J_s(k) / (2 k^s)`
    pub leading: BigRational,
    /// `1/(r+1) sum_{m=1}^{floor(r/2)} C(r+1, 2m) B_{2m} J_{2ms}(k) / k^{2ms}`
    pub bernoulli_tail: BigRational,
    /// `sum_{d | k, d > 1} mu(d) delta_{d^s, r}`; `None` for `k = 1`.
    pub delta_correction: Option<BigRational>,
}

/// `delta_{d^s, r} = 1/(r+1) - S_r(d^s) / d^{s(r+1)}`, always in `(0, 1/d^s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaTerm {
    pub d: BigUint,
    pub s: u32,
    pub r: u32,
    pub value: BigRational,
}

fn check_rs(r: u32, s: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::NotPositive("r"));
    }
    if s == 0 {
        return Err(Error::NotPositive("s"));
    }
    Ok(())
}

fn power(base: &BigUint, exp: u32) -> BigRational {
    from_biguint(&base.pow(exp))
}

/// `sum_{j=1}^{k^s} j^r c_k^(s)(j)` by literal summation (`k^s <= 10^4`).
pub fn weighted_sum_direct(k: u64, r: u32, s: u32) -> Result<BigInt> {
    check_rs(r, s)?;
    let table = PeriodTable::new(k, s)?;
    Ok(table
        .values()
        .enumerate()
        .filter(|&(_, c)| c != 0)
        .map(|(i, c)| BigInt::from(i as u64 + 1).pow(r) * c)
        .sum())
}

/// [`weighted_sum_direct`] divided by `k^{s(r+1)}`.
pub fn weighted_average_direct(k: u64, r: u32, s: u32) -> Result<BigRational> {
    let sum = weighted_sum_direct(k, r, s)?;
    Ok(BigRational::new(sum, BigInt::from(k).pow(s * (r + 1))))
}

/// `J_s(k) / (2 k^s)`.
pub fn leading_term(k: &Factorization, s: u32) -> BigRational {
    from_biguint(&k.jordan_totient(s)) / (power(k.value(), s) * integer(2))
}

/// `1/(r+1) sum_{m=1}^{floor(r/2)} C(r+1, 2m) B_{2m} J_{2ms}(k) / k^{2ms}`.
///
/// Empty (zero) when `r = 1`. Defined for every `k >= 1`.
pub fn bernoulli_tail(k: &Factorization, r: u32, s: u32) -> BigRational {
    let sum = (1..=r / 2).fold(BigRational::zero(), |acc, m| {
        let e = 2 * m * s;
        acc + from_biguint(&binomial(r as u64 + 1, 2 * m as u64))
            * bernoulli_number(2 * m)
            * from_biguint(&k.jordan_totient(e))
            / power(k.value(), e)
    });
    sum / integer(r + 1)
}

/// The Bernoulli closed form evaluated without any domain restriction.
///
/// Correct for `k >= 2`; at `k = 1` it gives `1 - 1/(r+1)`, not the true
/// average `1`.
pub fn closed_form_unrestricted(k: &Factorization, r: u32, s: u32) -> BigRational {
    leading_term(k, s) + bernoulli_tail(k, r, s)
}

fn require_k_at_least_two(k: &Factorization) -> Result<()> {
    if k.value() < &BigUint::from(2u32) {
        return Err(Error::domain(
            "k",
            format!("needs k >= 2, got {}", k.value()),
        ));
    }
    Ok(())
}

/// Closed-form breakdown for `k >= 2`, including the delta correction.
pub fn weighted_average_closed(k: u64, r: u32, s: u32) -> Result<WeightedAverageBreakdown> {
    weighted_average_closed_of(&*factorize(k)?, r, s)
}

pub fn weighted_average_closed_of(
    k: &Factorization,
    r: u32,
    s: u32,
) -> Result<WeightedAverageBreakdown> {
    check_rs(r, s)?;
    require_k_at_least_two(k)?;
    let leading = leading_term(k, s);
    let bernoulli_tail = bernoulli_tail(k, r, s);
    Ok(WeightedAverageBreakdown {
        k: k.value().clone(),
        r,
        s,
        value: &leading + &bernoulli_tail,
        leading,
        bernoulli_tail,
        delta_correction: Some(delta_correction(k, s, r)?),
    })
}

/// `W(k, r, s)` for any `k >= 1`: exactly `1` at `k = 1`, the closed form otherwise.
pub fn weighted_average_value(k: u64, r: u32, s: u32) -> Result<BigRational> {
    weighted_average_value_of(&*factorize(k)?, r, s)
}

pub fn weighted_average_value_of(k: &Factorization, r: u32, s: u32) -> Result<BigRational> {
    check_rs(r, s)?;
    if k.is_one() {
        Ok(BigRational::one())
    } else {
        Ok(closed_form_unrestricted(k, r, s))
    }
}

/// `delta_{d^s, r}`. Fails if the exact value escapes `(0, 1/d^s)`.
pub fn delta_term(d: impl Into<BigUint>, s: u32, r: u32) -> Result<DeltaTerm> {
    check_rs(r, s)?;
    let d = d.into();
    if d < BigUint::from(2u32) {
        return Err(Error::domain("d", format!("needs d >= 2, got {d}")));
    }
    let big_d = (&d).pow(s);
    let lower_sum = from_biguint(&power_sum(r, &big_d)?) / power(&big_d, r + 1);
    let value = ratio(1, r + 1) - lower_sum;
    let upper = BigRational::one() / from_biguint(&big_d);
    if !value.is_positive() || value >= upper {
        return Err(Error::Inconsistent(format!(
            "delta_(d^s, r) = {value} outside (0, {upper}) for d={d}, s={s}, r={r}"
        )));
    }
    Ok(DeltaTerm { d, s, r, value })
}

/// `sum_{d | k, d > 1} mu(d) delta_{d^s, r}`, over the squarefree divisors of `k`.
pub fn delta_correction(k: &Factorization, s: u32, r: u32) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for (d, mu) in k.squarefree_divisors() {
        if d.is_one() {
            continue;
        }
        total += integer(mu) * delta_term(d.value().clone(), s, r)?.value;
    }
    Ok(total)
}

/// `J_s(k)/k^s - 1/(r+1) - sum_{d | k, d > 1} mu(d) delta_{d^s, r}` for `k >= 2`.
pub fn weighted_average_delta_form(k: u64, r: u32, s: u32) -> Result<BigRational> {
    weighted_average_delta_form_of(&*factorize(k)?, r, s)
}

pub fn weighted_average_delta_form_of(k: &Factorization, r: u32, s: u32) -> Result<BigRational> {
    check_rs(r, s)?;
    require_k_at_least_two(k)?;
    Ok(limit_r_infinity_of(k, s) - ratio(1, r + 1) - delta_correction(k, s, r)?)
}

/// `(1/x) sum_{k=1}^{x} W(k, r, s)`.
pub fn average_over_k(x: u64, r: u32, s: u32) -> Result<BigRational> {
    Ok(running_averages(x, r, s)?
        .pop()
        .expect("x >= 1 gives at least one average"))
}

/// `[average_over_k(1), ..., average_over_k(x_max)]` in one pass.
pub fn running_averages(x_max: u64, r: u32, s: u32) -> Result<Vec<BigRational>> {
    if x_max == 0 {
        return Err(Error::NotPositive("x"));
    }
    let mut sum = BigRational::zero();
    let mut out = Vec::with_capacity(x_max as usize);
    for k in 1..=x_max {
        sum += weighted_average_value(k, r, s)?;
        out.push(&sum / integer(k));
    }
    Ok(out)
}

/// `J_s(k) / k^s`, the limit of `W(k, r, s)` as `r` grows.
pub fn limit_r_infinity(k: u64, s: u32) -> Result<BigRational> {
    if s == 0 {
        return Err(Error::NotPositive("s"));
    }
    Ok(limit_r_infinity_of(&*factorize(k)?, s))
}

pub fn limit_r_infinity_of(k: &Factorization, s: u32) -> BigRational {
    from_biguint(&k.jordan_totient(s)) / power(k.value(), s)
}

/// Largest `k^s` accepted by [`weighted_sum_direct`].
pub const DIRECT_GUARD: u64 = ORACLE_GUARD;
