//! Exact rationals, Bernoulli numbers and polynomials, and Faulhaber power sums.
//!
//! [`BigRational`] is `num_rational`'s arbitrary-precision ratio: always in
//! lowest terms with a positive denominator, zero stored as `0/1`. Its
//! `Display` already prints `p/q`, or just `p` when the denominator is one,
//! which is the text form used by every report and CSV column.

use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational;

use crate::{Error, Result};

/// `numer / denom` as an exact rational. Panics on a zero denominator.
pub fn ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> BigRational {
    BigRational::new(numer.into(), denom.into())
}

pub fn integer(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn from_biguint(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from_biguint(Sign::Plus, n.clone()))
}

/// `p/q` in lowest terms, or `p` when `q = 1`.
pub fn format_rational(q: &BigRational) -> String {
    q.to_string()
}

/// Parses `a/b` or `a` (optional leading minus on `a`). Floats are rejected.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || {
        Error::domain(
            "rational",
            format!("expected \"a/b\" or \"a\", got {text:?}"),
        )
    };
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(Error::domain(
            "rational",
            format!("zero denominator in {text:?}"),
        ));
    }
    Ok(BigRational::new(numer, denom))
}

/// Returns the integer value of `q`, or an [`Error::Inconsistent`] naming
/// `what` if `q` has a non-trivial denominator.
pub fn expect_integer(q: &BigRational, what: &str) -> Result<BigInt> {
    if q.is_integer() {
        Ok(q.numer().clone())
    } else {
        Err(Error::Inconsistent(format!(
            "{what} = {q} is not an integer"
        )))
    }
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn bernoulli_cache() -> &'static RwLock<Vec<BigRational>> {
    static CACHE: OnceLock<RwLock<Vec<BigRational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![BigRational::one()]))
}

/// `B_n` with `B_1 = -1/2`, from `sum_{j=0}^{n} C(n+1, j) B_j = 0` solved for `B_n`.
pub fn bernoulli_number(n: u32) -> BigRational {
    let n = n as usize;
    if let Some(b) = bernoulli_cache()
        .read()
        .expect("bernoulli cache poisoned")
        .get(n)
    {
        return b.clone();
    }
    let mut table = bernoulli_cache().write().expect("bernoulli cache poisoned");
    while table.len() <= n {
        let m = table.len() as u64;
        let sum = table
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (j, b)| {
                acc + from_biguint(&binomial(m + 1, j as u64)) * b
            });
        table.push(-sum / integer(m + 1));
    }
    table[n].clone()
}

/// `B_n(x) = sum_{k=0}^{n} C(n, k) B_k x^{n-k}`, by Horner's rule.
pub fn bernoulli_polynomial(n: u32, x: &BigRational) -> BigRational {
    (0..=n).fold(BigRational::zero(), |acc, k| {
        acc * x + from_biguint(&binomial(n as u64, k as u64)) * bernoulli_number(k)
    })
}

/// `S_r(n) = sum_{j=1}^{n-1} j^r`, via `(r + 1) S_r(n) = B_{r+1}(n) - B_{r+1}`.
///
/// A non-integer or negative result is reported as [`Error::Inconsistent`].
pub fn power_sum(r: u32, n: &BigUint) -> Result<BigUint> {
    if r == 0 {
        return Err(Error::NotPositive("r"));
    }
    if *n < BigUint::from(2u32) {
        return Err(Error::domain(
            "n",
            format!("power sum needs n >= 2, got {n}"),
        ));
    }
    let x = from_biguint(n);
    let value = (bernoulli_polynomial(r + 1, &x) - bernoulli_number(r + 1)) / integer(r + 1);
    let value = expect_integer(&value, "S_r(n)")?;
    if value.is_negative() {
        return Err(Error::Inconsistent(format!(
            "S_{r}({n}) = {value} is negative"
        )));
    }
    Ok(value.magnitude().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;
    use proptest::prelude::*;

    fn loop_power_sum(r: u32, n: u64) -> BigUint {
        (1..n).map(|j| BigUint::from(j).pow(r)).sum()
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli_number(0), integer(1));
        assert_eq!(bernoulli_number(1), ratio(-1, 2));
        assert_eq!(bernoulli_number(2), ratio(1, 6));
        assert_eq!(bernoulli_number(3), integer(0));
        assert_eq!(bernoulli_number(12), ratio(-691, 2730));
    }

    #[test]
    fn bernoulli_recursion_holds() {
        for n in 1..=30u64 {
            let sum = (0..=n).fold(BigRational::zero(), |acc, j| {
                acc + from_biguint(&binomial(n + 1, j)) * bernoulli_number(j as u32)
            });
            assert!(sum.is_zero(), "n = {n}");
        }
        for n in (3..=31).step_by(2) {
            assert!(bernoulli_number(n).is_zero());
        }
    }

    #[test]
    fn bernoulli_polynomial_examples() {
        for n in 0..=10 {
            assert_eq!(bernoulli_polynomial(n, &integer(0)), bernoulli_number(n));
        }
        assert_eq!(bernoulli_polynomial(5, &integer(1)), integer(0));
        assert_eq!(bernoulli_polynomial(3, &integer(4)), integer(42));
    }

    #[test]
    fn bernoulli_polynomial_endpoints() {
        for n in 0..=20 {
            let at0 = bernoulli_polynomial(n, &integer(0));
            let at1 = bernoulli_polynomial(n, &integer(1));
            if n == 1 {
                assert_eq!(at1 - at0, integer(1));
            } else {
                assert_eq!(at0, bernoulli_number(n));
                assert_eq!(at1, bernoulli_number(n));
            }
        }
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sum(1, &2u32.into()).unwrap(), BigUint::from(1u32));
        assert_eq!(power_sum(3, &3u32.into()).unwrap(), BigUint::from(9u32));
        for s in 1..=20u32 {
            let two_s = BigUint::from(2u32).pow(s);
            let want = BigUint::from(2u32).pow(s - 1) * (&two_s - 1u32);
            assert_eq!(power_sum(1, &two_s).unwrap(), want);
        }
        assert!(power_sum(0, &5u32.into()).is_err());
        assert!(power_sum(2, &1u32.into()).is_err());
    }

    #[test]
    fn power_sum_matches_loop() {
        for r in 1..=12 {
            for n in 2..=50u64 {
                assert_eq!(
                    power_sum(r, &n.into()).unwrap(),
                    loop_power_sum(r, n),
                    "r={r} n={n}"
                );
            }
        }
    }

    #[test]
    fn power_sum_large_argument() {
        // 10^12 as a base: the Bernoulli form stays cheap
        let n = BigUint::from(10u32).pow(12u32);
        let s1 = power_sum(1, &n).unwrap();
        assert_eq!(s1, &n * (&n - 1u32) / 2u32);
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(7, 0), BigUint::one());
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(10, 5), BigUint::from(252u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        for n in 1..40u64 {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn rational_text_form() {
        assert_eq!(format_rational(&ratio(6, 16)), "3/8");
        assert_eq!(format_rational(&ratio(-4, 2)), "-2");
        assert_eq!(format_rational(&integer(0)), "0");
        assert_eq!(parse_rational("6/16").unwrap(), ratio(3, 8));
        assert_eq!(parse_rational(" 2 ").unwrap(), integer(2));
        assert_eq!(parse_rational("-1/3").unwrap(), ratio(-1, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn bernoulli_cache_concurrent_growth() {
        let handles: Vec<_> = (0..8u32)
            .map(|i| std::thread::spawn(move || bernoulli_number(40 + 2 * i)))
            .collect();
        for (i, h) in handles.into_iter().enumerate() {
            assert_eq!(h.join().unwrap(), bernoulli_number(40 + 2 * i as u32));
        }
        assert_eq!(
            bernoulli_number(40),
            ratio(-261_082_718_496_449_122_051i128, 13_530)
        );
    }

    proptest! {
        #[test]
        fn add_then_subtract_round_trips(
            a in -10_000i64..10_000, b in 1i64..10_000,
            c in -10_000i64..10_000, d in 1i64..10_000,
        ) {
            let x = ratio(a, b);
            let y = ratio(c, d);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            prop_assert_eq!(&(&x * &y) - &(&y * &x), integer(0));
            prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
        }
    }
}
