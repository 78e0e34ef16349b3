//! Beurling-type integers `<P>` (the multiplicative semigroup generated by a
//! set of primes) and counting-function densities.

use num_bigint::BigInt;

use crate::arith::is_prime;
use crate::exact::{ratio, BigRational};
use crate::{Error, Result};

/// The members of `<P>` not exceeding `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeurlingSemigroup {
    primes: Vec<u64>,
    bound: u64,
    members: Vec<u64>,
}

impl BeurlingSemigroup {
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Ascending; always starts with `1`.
    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn contains(&self, n: u64) -> bool {
        self.members.binary_search(&n).is_ok()
    }
}

/// Every product of powers of primes in `primes` that is `<= bound`.
/// An empty prime set generates `{1}`.
pub fn beurling_generate(primes: &[u64], bound: u64) -> Result<BeurlingSemigroup> {
    if bound == 0 {
        return Err(Error::NotPositive("x"));
    }
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::domain("prime set", format!("{p} is not prime")));
    }
    let mut members = vec![1u64];
    for &p in &primes {
        let mut extra = Vec::new();
        for &m in &members {
            let mut v = m;
            while let Some(next) = v.checked_mul(p).filter(|&n| n <= bound) {
                extra.push(next);
                v = next;
            }
        }
        members.extend(extra);
    }
    members.sort_unstable();
    Ok(BeurlingSemigroup {
        primes,
        bound,
        members,
    })
}

/// `A(x) / x`, where `A(x)` counts the members of `set` in `[1, x]`.
pub fn density_estimate(set: &[u64], x: u64) -> Result<BigRational> {
    if x == 0 {
        return Err(Error::NotPositive("x"));
    }
    let count = set.iter().filter(|&&a| (1..=x).contains(&a)).count();
    Ok(ratio(BigInt::from(count), BigInt::from(x)))
}
