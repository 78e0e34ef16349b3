//! Integer arithmetic for multiplicative functions.
//!
//! Factorization is by trial division (2, 3, then `6k ± 1`). That is enough for
//! every integer this crate factors; the large moduli that appear in the
//! primorial windows are built from their prime lists with
//! [`Factorization::from_primes`] and are never factored.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::{One, Pow, ToPrimitive};

use crate::{Error, Result};

/// Above this bound [`primes_in_range`] falls back to per-candidate trial division.
pub const SIEVE_LIMIT: u64 = 10_000_000;

/// Canonical prime factorization of a positive integer.
///
/// Primes are strictly increasing and every exponent is at least one, so the
/// factor list of `1` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: BigUint,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization {
            value: BigUint::one(),
            factors: Vec::new(),
        }
    }

    /// Builds a factorization from `(prime, exponent)` pairs.
    ///
    /// The pairs must already be in canonical order; each base is checked for
    /// primality by trial division.
    pub fn from_prime_powers(factors: Vec<(u64, u32)>) -> Result<Self> {
        let mut value = BigUint::one();
        let mut last = 1u64;
        for &(p, e) in &factors {
            if p <= last {
                return Err(Error::domain(
                    "factorization",
                    format!("primes must be strictly increasing, got {p} after {last}"),
                ));
            }
            if e == 0 {
                return Err(Error::domain(
                    "factorization",
                    format!("zero exponent on {p}"),
                ));
            }
            if !is_prime(p) {
                return Err(Error::domain("factorization", format!("{p} is not prime")));
            }
            value *= BigUint::from(p).pow(e);
            last = p;
        }
        Ok(Factorization { value, factors })
    }

    /// Squarefree product of the given primes (any order, duplicates rejected).
    pub fn from_primes(primes: &[u64]) -> Result<Self> {
        let mut sorted = primes.to_vec();
        sorted.sort_unstable();
        Self::from_prime_powers(sorted.into_iter().map(|p| (p, 1)).collect())
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of distinct prime divisors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn mobius(&self) -> i8 {
        if !self.is_squarefree() {
            0
        } else if self.omega() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `J_s(n) = n^s * prod_{p | n} (1 - p^-s)`, evaluated as
    /// `n^s * prod (p^s - 1) / p^s` with each division exact.
    pub fn jordan_totient(&self, s: u32) -> BigUint {
        let mut acc = (&self.value).pow(s);
        for &(p, _) in &self.factors {
            let ps = BigUint::from(p).pow(s);
            acc /= &ps;
            acc *= ps - 1u32;
        }
        acc
    }

    /// All divisors in ascending order.
    pub fn divisors(&self) -> Vec<BigUint> {
        let mut divs = vec![BigUint::one()];
        for &(p, e) in &self.factors {
            let p = BigUint::from(p);
            let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
            for d in &divs {
                let mut pk = d.clone();
                next.push(pk.clone());
                for _ in 0..e {
                    pk *= &p;
                    next.push(pk.clone());
                }
            }
            divs = next;
        }
        divs.sort();
        divs
    }

    /// The divisors `d` with `mu(d) != 0`, each with its Möbius value, ascending.
    ///
    /// There are exactly `2^omega(n)` of them.
    pub fn squarefree_divisors(&self) -> Vec<(Factorization, i8)> {
        let primes: Vec<u64> = self.primes().collect();
        let mut out: Vec<(Factorization, i8)> = Vec::with_capacity(1 << primes.len());
        for mask in 0u64..(1u64 << primes.len()) {
            let mut value = BigUint::one();
            let mut factors = Vec::with_capacity(mask.count_ones() as usize);
            for (i, &p) in primes.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    value *= p;
                    factors.push((p, 1));
                }
            }
            let mu = if factors.len() % 2 == 0 { 1 } else { -1 };
            out.push((Factorization { value, factors }, mu));
        }
        out.sort_by(|a, b| a.0.value.cmp(&b.0.value));
        out
    }
}

fn cache() -> &'static RwLock<HashMap<u64, Arc<Factorization>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Factorization>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn trial_divide(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut strip = |n: &mut u64, p: u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    strip(&mut n, 2);
    strip(&mut n, 3);
    let (mut f, mut step) = (5u64, 2u64);
    while f <= n / f {
        strip(&mut n, f);
        f += step;
        step = 6 - step;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Prime factorization of `n >= 1`. Results are memoized in a process-wide
/// cache shared by all threads.
pub fn factorize(n: u64) -> Result<Arc<Factorization>> {
    if n == 0 {
        return Err(Error::NotPositive("n"));
    }
    if let Some(f) = cache().read().expect("factor cache poisoned").get(&n) {
        return Ok(Arc::clone(f));
    }
    let f = Arc::new(Factorization {
        value: BigUint::from(n),
        factors: trial_divide(n),
    });
    cache()
        .write()
        .expect("factor cache poisoned")
        .entry(n)
        .or_insert_with(|| Arc::clone(&f));
    Ok(f)
}

pub fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let (mut f, mut step) = (5u64, 2u64);
    while f <= n / f {
        if n % f == 0 {
            return false;
        }
        f += step;
        step = 6 - step;
    }
    true
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    Ok(factorize(n)?
        .divisors()
        .into_iter()
        .map(|d| d.to_u64().expect("divisor of a u64 fits in u64"))
        .collect())
}

pub fn mobius(n: u64) -> Result<i8> {
    Ok(factorize(n)?.mobius())
}

pub fn omega(n: u64) -> Result<usize> {
    Ok(factorize(n)?.omega())
}

/// Jordan's totient `J_s(n)`; `J_1` is Euler's phi.
pub fn jordan_totient(s: u32, n: u64) -> Result<BigUint> {
    if s == 0 {
        return Err(Error::NotPositive("s"));
    }
    Ok(factorize(n)?.jordan_totient(s))
}

/// `(a, b)_s`: the largest `d^s` dividing both `a` and `b`.
///
/// With `gcd(a, b) = prod p^e` this is `prod p^(s * floor(e / s))`.
pub fn generalized_gcd(a: u64, b: u64, s: u32) -> Result<u64> {
    if a == 0 {
        return Err(Error::NotPositive("a"));
    }
    if b == 0 {
        return Err(Error::NotPositive("b"));
    }
    if s == 0 {
        return Err(Error::NotPositive("s"));
    }
    let g = factorize(a.gcd(&b))?;
    Ok(g.factors()
        .iter()
        .map(|&(p, e)| p.pow(s * (e / s)))
        .product())
}

/// Primes `p` with `lo < p <= hi`, ascending.
pub fn primes_in_range(lo: u64, hi: u64) -> Result<Vec<u64>> {
    if lo == 0 {
        return Err(Error::NotPositive("lo"));
    }
    if hi <= lo {
        return Ok(Vec::new());
    }
    if hi <= SIEVE_LIMIT {
        Ok(sieve_segment(lo + 1, hi))
    } else {
        Ok((lo + 1..=hi).filter(|&n| is_prime(n)).collect())
    }
}

/// Segmented sieve of Eratosthenes over `[start, end]`.
fn sieve_segment(start: u64, end: u64) -> Vec<u64> {
    let root = end.sqrt();
    let mut small = vec![true; root as usize + 1];
    let mut base = Vec::new();
    for i in 2..=root as usize {
        if small[i] {
            base.push(i as u64);
            let mut m = i * i;
            while m <= root as usize {
                small[m] = false;
                m += i;
            }
        }
    }
    let mut composite = vec![false; (end - start + 1) as usize];
    for p in base {
        let first = (p * p).max(start.div_ceil(p) * p);
        let mut m = first;
        while m <= end {
            composite[(m - start) as usize] = true;
            m += p;
        }
    }
    (start..=end)
        .filter(|&n| n >= 2 && !composite[(n - start) as usize])
        .collect()
}

/// The `n`-th prime, 1-based (`nth_prime(1) == 2`).
pub fn nth_prime(n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::NotPositive("n"));
    }
    let mut hi = 64u64;
    loop {
        let primes = primes_in_range(1, hi)?;
        if primes.len() >= n {
            return Ok(primes[n - 1]);
        }
        hi *= 2;
    }
}
