//! Integer sequences `k_n` used by the limit checks: the `n`-th prime, the
//! primorial window `prod_{n < p <= lambda n} p`, and twice that window.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, ToPrimitive};
use serde::Serialize;

use crate::arith::{nth_prime, primes_in_range, Factorization};
use crate::exact::{from_biguint, integer, power_sum, ratio, BigRational};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceVariant {
    /// `k_n` = the `n`-th prime: one prime factor, tending to infinity.
    BoundedOmega,
    /// `k_n = prod_{n < p <= lambda n} p`.
    Window,
    /// `k_n = 2 prod_{n < p <= lambda n} p`, `n >= 2`.
    WindowTimes2,
}

impl SequenceVariant {
    pub const ALL: [SequenceVariant; 3] = [
        SequenceVariant::BoundedOmega,
        SequenceVariant::Window,
        SequenceVariant::WindowTimes2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SequenceVariant::BoundedOmega => "bounded-omega",
            SequenceVariant::Window => "window",
            SequenceVariant::WindowTimes2 => "window2",
        }
    }
}

impl fmt::Display for SequenceVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bounded-omega" | "bounded_omega" | "prime" => Ok(SequenceVariant::BoundedOmega),
            "window" => Ok(SequenceVariant::Window),
            "window2" | "window-times2" | "window_times2" => Ok(SequenceVariant::WindowTimes2),
            other => Err(Error::domain(
                "sequence variant",
                format!("{other:?} (expected bounded-omega, window or window2)"),
            )),
        }
    }
}

fn window_upper(n: u64, lambda: &BigRational) -> Result<u64> {
    if *lambda <= integer(1) {
        return Err(Error::domain(
            "lambda",
            format!("needs lambda > 1, got {lambda}"),
        ));
    }
    let hi: BigInt = (lambda * integer(n)).floor().to_integer();
    hi.to_u64()
        .ok_or_else(|| Error::Overflow(format!("floor(lambda * n) for n = {n}")))
}

/// The primes in `(n, floor(lambda n)]`.
pub fn window_primes(n: u64, lambda: &BigRational) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::NotPositive("n"));
    }
    let hi = window_upper(n, lambda)?;
    primes_in_range(n, hi)
}

/// `prod_{n < p <= lambda n} p`, built from its prime list; `1` for an empty window.
pub fn primorial_window(n: u64, lambda: &BigRational) -> Result<Factorization> {
    Factorization::from_primes(&window_primes(n, lambda)?)
}

/// `2 * prod_{n < p <= lambda n} p` for `n >= 2`.
pub fn primorial_window_times2(n: u64, lambda: &BigRational) -> Result<Factorization> {
    if n < 2 {
        return Err(Error::domain(
            "n",
            format!("window-times2 needs n >= 2, got {n}"),
        ));
    }
    let mut primes = window_primes(n, lambda)?;
    primes.insert(0, 2);
    Factorization::from_primes(&primes)
}

/// `k_n` for the given variant. `lambda` is ignored by [`SequenceVariant::BoundedOmega`].
pub fn sequence_term(
    variant: SequenceVariant,
    n: u64,
    lambda: &BigRational,
) -> Result<Factorization> {
    match variant {
        SequenceVariant::BoundedOmega => {
            let n = usize::try_from(n).map_err(|_| Error::Overflow(format!("n = {n}")))?;
            Factorization::from_primes(&[nth_prime(n)?])
        }
        SequenceVariant::Window => primorial_window(n, lambda),
        SequenceVariant::WindowTimes2 => primorial_window_times2(n, lambda),
    }
}

/// `(2^s - 1)/2^s - S_r(2^s)/2^{s(r+1)}`: the limit for the window-times2 sequence.
pub fn window_times2_target(r: u32, s: u32) -> Result<BigRational> {
    let two_s = BigUint::from(2u32).pow(s);
    let lower = from_biguint(&power_sum(r, &two_s)?) / from_biguint(&(&two_s).pow(r + 1));
    Ok(from_biguint(&(&two_s - 1u32)) / from_biguint(&two_s) - lower)
}

/// `1/2 - S_r(2^s)/2^{s(r+1)}`: the window-times2 limit as worded in the
/// theorem statement. Agrees with [`window_times2_target`] only at `s = 1`.
pub fn window_times2_stated_target(r: u32, s: u32) -> Result<BigRational> {
    let two_s = BigUint::from(2u32).pow(s);
    let lower = from_biguint(&power_sum(r, &two_s)?) / from_biguint(&(&two_s).pow(r + 1));
    Ok(ratio(1, 2) - lower)
}

/// Limit of `W(k_n, r, s)` for the variant.
pub fn sequence_target(variant: SequenceVariant, r: u32, s: u32) -> Result<BigRational> {
    match variant {
        SequenceVariant::BoundedOmega | SequenceVariant::Window => {
            Ok(BigRational::one() - ratio(1, r + 1))
        }
        SequenceVariant::WindowTimes2 => window_times2_target(r, s),
    }
}

/// Fails unless `values` is strictly increasing.
pub(crate) fn require_increasing(values: &[u64], what: &'static str) -> Result<()> {
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain(
            what,
            format!("must be strictly increasing: {values:?}"),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> BigRational {
        integer(2)
    }

    #[test]
    fn window_examples() {
        assert_eq!(
            primorial_window(1, &two()).unwrap().value(),
            &BigUint::from(2u32)
        );
        assert_eq!(
            primorial_window(10, &two()).unwrap().value(),
            &BigUint::from(46189u32)
        );
        assert_eq!(
            primorial_window(4, &ratio(3, 2)).unwrap().value(),
            &BigUint::from(5u32)
        );
        // (7, 10.5] holds no prime
        assert!(primorial_window(7, &ratio(3, 2)).unwrap().is_one());
        assert!(primorial_window(10, &integer(1)).is_err());
        assert!(primorial_window(0, &two()).is_err());
    }

    #[test]
    fn window_times2_examples() {
        assert_eq!(
            primorial_window_times2(10, &two()).unwrap().value(),
            &BigUint::from(92378u32)
        );
        assert_eq!(
            primorial_window_times2(4, &ratio(3, 2)).unwrap().value(),
            &BigUint::from(10u32)
        );
        assert_eq!(
            primorial_window_times2(2, &two()).unwrap().value(),
            &BigUint::from(6u32)
        );
        assert!(primorial_window_times2(1, &two()).is_err());
    }

    #[test]
    fn window_at_forty_is_ten_primes() {
        let k = primorial_window(40, &two()).unwrap();
        assert_eq!(
            k.primes().collect::<Vec<_>>(),
            vec![41, 43, 47, 53, 59, 61, 67, 71, 73, 79]
        );
        assert_eq!(k.squarefree_divisors().len(), 1024);
    }

    #[test]
    fn targets() {
        assert_eq!(
            sequence_target(SequenceVariant::Window, 2, 1).unwrap(),
            ratio(2, 3)
        );
        assert_eq!(window_times2_target(1, 1).unwrap(), ratio(1, 4));
        for r in 1..=6 {
            assert_eq!(
                window_times2_target(r, 1).unwrap(),
                window_times2_stated_target(r, 1).unwrap()
            );
        }
        // at r = 1 the limit is (2^s - 1) / 2^{s+1}
        for s in 1..=5u32 {
            let two_s = 2i64.pow(s);
            assert_eq!(
                window_times2_target(1, s).unwrap(),
                ratio(two_s - 1, 2 * two_s)
            );
        }
        assert_ne!(
            window_times2_target(2, 2).unwrap(),
            window_times2_stated_target(2, 2).unwrap()
        );
    }

    #[test]
    fn variant_names_round_trip() {
        for v in SequenceVariant::ALL {
            assert_eq!(v.name().parse::<SequenceVariant>().unwrap(), v);
        }
        assert_eq!(
            "window-times2".parse::<SequenceVariant>().unwrap(),
            SequenceVariant::WindowTimes2
        );
        assert!("spiral".parse::<SequenceVariant>().is_err());
    }
}
