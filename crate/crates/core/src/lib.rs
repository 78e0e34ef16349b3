//! Exact evaluation of Cohen's generalized Ramanujan sums `c_k^(s)(j)`, the
//! weighted power-sum averages `k^{-s(r+1)} * sum_{j <= k^s} j^r c_k^(s)(j)`,
//! and a harness that checks the identities and bounds built on them.
//!
//! Every value that is an integer or a rational is computed exactly. The only
//! floating-point code is the exponential-sum oracle in [`crs`], which exists
//! to cross-check the exact evaluators.
//!
//! Module layout:
//!
//! - [`arith`]: factorization, divisors, Möbius, Jordan totient, generalized gcd, primes.
//! - [`exact`]: rationals, Bernoulli numbers and polynomials, power sums.
//! - [`crs`]: the generalized Ramanujan sum, its oracles and partial sums.
//! - [`weighted`]: the weighted average by direct, closed and delta forms.
//! - [`verify`]: per-theorem checks, Beurling semigroups, primorial windows, suites.

pub mod arith;
pub mod crs;
pub mod error;
pub mod exact;
pub mod verify;
pub mod weighted;

pub use error::{Error, Result};
