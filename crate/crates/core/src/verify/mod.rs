//! Theorem-by-theorem verification: special sequences, Beurling semigroups,
//! exact checks of every identity and inequality, and structured reports.

mod beurling;
mod report;
mod sequences;
mod suite;
mod theorems;

pub use beurling::{beurling_generate, density_estimate, BeurlingSemigroup};
pub use report::{CheckReport, ConvergenceReport, ConvergenceRow, Relation, Report};
pub use sequences::{
    primorial_window, primorial_window_times2, sequence_target, sequence_term, window_primes,
    window_times2_stated_target, window_times2_target, SequenceVariant,
};
pub use suite::{run_suite, tally, theorem_3_1_instances, Suite, SuiteConfig};
pub use theorems::{
    check_corollary, check_theorem_3_1, check_theorem_3_2, check_theorem_3_3, check_theorem_3_4,
    reciprocal_prime_sum, theorem_3_2_trend,
};
