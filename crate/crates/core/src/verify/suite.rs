//! Named batches of checks. A suite expands its configuration into an
//! ordered job list, runs the jobs on the rayon pool and returns the reports
//! in job order, so the output does not depend on the thread count.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::report::{CheckReport, Relation, Report};
use super::sequences::SequenceVariant;
use super::theorems::{
    check_corollary, check_theorem_3_1, check_theorem_3_2, check_theorem_3_3, check_theorem_3_4,
    theorem_3_2_trend,
};
use crate::arith::{primes_in_range, Factorization};
use crate::crs::{
    crs_closed, crs_divisor_oracle, crs_exponential_rounded, CrsQuery, PeriodTable, ORACLE_GUARD,
};
use crate::exact::{integer, ratio, BigRational};
use crate::weighted::{
    closed_form_unrestricted, limit_r_infinity, running_averages, weighted_average_closed,
    weighted_average_delta_form, weighted_average_direct, weighted_average_value,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Thm31,
    Thm32,
    Thm33,
    Thm34,
    Corollary,
    Identities,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = [
        "thm31",
        "thm32",
        "thm33",
        "thm34",
        "corollary",
        "identities",
        "all",
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm31 => "thm31",
            Suite::Thm32 => "thm32",
            Suite::Thm33 => "thm33",
            Suite::Thm34 => "thm34",
            Suite::Corollary => "corollary",
            Suite::Identities => "identities",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "thm31" => Suite::Thm31,
            "thm32" => Suite::Thm32,
            "thm33" => Suite::Thm33,
            "thm34" => Suite::Thm34,
            "corollary" => Suite::Corollary,
            "identities" => Suite::Identities,
            "all" => Suite::All,
            other => {
                return Err(Error::domain(
                    "suite",
                    format!("{other:?} (expected one of {})", Suite::NAMES.join(", ")),
                ))
            }
        })
    }
}

/// Overrides for a suite's default grid. `None` keeps the default; each
/// suite documents which fields it reads.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Explicit list of `k`; replaces the `k_max` range.
    pub k: Option<Vec<u64>>,
    pub k_max: Option<u64>,
    /// Explicit list of `r`; replaces the `r_max` range.
    pub r: Option<Vec<u32>>,
    pub r_max: Option<u32>,
    pub s: Option<Vec<u32>>,
    pub x: Option<u64>,
    pub eps: Option<Vec<BigRational>>,
    pub lambda: Option<BigRational>,
    pub n_list: Option<Vec<u64>>,
    pub variants: Option<Vec<SequenceVariant>>,
    pub tolerance: Option<BigRational>,
}

impl SuiteConfig {
    fn ks(&self, lo: u64, default_max: u64) -> Vec<u64> {
        match &self.k {
            Some(ks) => ks.clone(),
            None => (lo..=self.k_max.unwrap_or(default_max)).collect(),
        }
    }

    fn rs(&self, lo: u32, default_max: u32) -> Vec<u32> {
        match &self.r {
            Some(rs) => rs.clone(),
            None => (lo..=self.r_max.unwrap_or(default_max)).collect(),
        }
    }

    fn ss(&self, default: &[u32]) -> Vec<u32> {
        self.s.clone().unwrap_or_else(|| default.to_vec())
    }
}

#[derive(Debug, Clone)]
enum Job {
    Thm31 {
        k: u64,
        r: u32,
        s: u32,
        eps: BigRational,
    },
    Thm32 {
        variant: SequenceVariant,
        r: u32,
        s: u32,
    },
    Thm33Min {
        x: u64,
        r: u32,
        s: u32,
    },
    Thm33Limit {
        k: u64,
        s: u32,
    },
    Thm34 {
        k: u64,
        s: u32,
    },
    Corollary {
        k: u64,
        r: u32,
        s: u32,
    },
    DirectClosed {
        k: u64,
        r: u32,
        s: u32,
    },
    DeltaClosed {
        k: u64,
        r: u32,
        s: u32,
    },
    KOne {
        r: u32,
        s: u32,
    },
    ZeroSum {
        k: u64,
        s: u32,
    },
    CrsAgreement {
        k: u64,
        s: u32,
    },
}

fn within_guard(k: u64, s: u32) -> bool {
    k.checked_pow(s).is_some_and(|m| m <= ORACLE_GUARD)
}

/// Squarefree `k` built from one to three distinct primes in `(4/eps, 12/eps]`.
pub fn theorem_3_1_instances(eps: &BigRational) -> Result<Vec<u64>> {
    if !eps.is_positive() {
        return Err(Error::domain("eps", format!("needs eps > 0, got {eps}")));
    }
    let bound = |c: i64| -> Result<u64> {
        let v: BigInt = (integer(c) / eps).floor().to_integer();
        u64::try_from(v).map_err(|_| Error::Overflow(format!("{c}/eps")))
    };
    let primes = primes_in_range(bound(4)?, bound(12)?)?;
    let mut ks = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        ks.push(p);
        for (j, &q) in primes.iter().enumerate().skip(i + 1) {
            ks.push(p * q);
            for &t in &primes[j + 1..] {
                ks.push(p * q * t);
            }
        }
    }
    ks.sort_unstable();
    Ok(ks)
}

fn jobs(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<Job>> {
    let mut out = Vec::new();
    match suite {
        Suite::All => {
            for part in [
                Suite::Identities,
                Suite::Thm31,
                Suite::Thm32,
                Suite::Thm33,
                Suite::Thm34,
                Suite::Corollary,
            ] {
                out.extend(jobs(part, cfg)?);
            }
        }
        Suite::Thm31 => {
            let eps_list = cfg
                .eps
                .clone()
                .unwrap_or_else(|| vec![ratio(1, 2), ratio(1, 4)]);
            for eps in eps_list {
                let ks = match &cfg.k {
                    Some(ks) => ks.clone(),
                    None => theorem_3_1_instances(&eps)?,
                };
                for &k in &ks {
                    for r in cfg.rs(2, 8) {
                        for s in cfg.ss(&[1, 2]) {
                            out.push(Job::Thm31 {
                                k,
                                r,
                                s,
                                eps: eps.clone(),
                            });
                        }
                    }
                }
            }
        }
        Suite::Thm32 => {
            let variants = cfg
                .variants
                .clone()
                .unwrap_or_else(|| SequenceVariant::ALL.to_vec());
            for variant in variants {
                for r in cfg.r.clone().unwrap_or_else(|| vec![2, 3]) {
                    for s in cfg.ss(&[1, 2]) {
                        out.push(Job::Thm32 { variant, r, s });
                    }
                }
            }
        }
        Suite::Thm33 => {
            let x = cfg.x.unwrap_or(200);
            let ss = cfg.ss(&[1, 2]);
            for r in cfg.rs(1, 10) {
                for &s in &ss {
                    out.push(Job::Thm33Min { x, r, s });
                }
            }
            for k in cfg.ks(1, 10) {
                for &s in &ss {
                    out.push(Job::Thm33Limit { k, s });
                }
            }
        }
        Suite::Thm34 => {
            for k in cfg.ks(2, 20) {
                for s in cfg.ss(&[1, 2]) {
                    if k >= 2 && within_guard(k, s) {
                        out.push(Job::Thm34 { k, s });
                    }
                }
            }
        }
        Suite::Corollary => {
            for k in cfg.ks(1, 30) {
                for r in cfg.rs(1, 10) {
                    for s in cfg.ss(&[1, 2]) {
                        out.push(Job::Corollary { k, r, s });
                    }
                }
            }
        }
        Suite::Identities => {
            let ss = cfg.ss(&[1, 2]);
            for k in cfg.ks(2, 12) {
                for r in cfg.rs(1, 8) {
                    for &s in &ss {
                        if k >= 2 && within_guard(k, s) {
                            out.push(Job::DirectClosed { k, r, s });
                            out.push(Job::DeltaClosed { k, r, s });
                        }
                    }
                }
            }
            for r in 1..=10 {
                for s in 1..=3 {
                    out.push(Job::KOne { r, s });
                }
            }
            for &s in &ss {
                let k_top = if s == 1 { 30 } else { 20 };
                for k in 2..=k_top {
                    if within_guard(k, s) {
                        out.push(Job::ZeroSum { k, s });
                        out.push(Job::CrsAgreement { k, s });
                    }
                }
            }
        }
    }
    Ok(out)
}

fn check(
    id: String,
    anchor: &str,
    inputs: Vec<(&str, String)>,
    lhs: BigRational,
    rhs: BigRational,
    relation: Relation,
) -> CheckReport {
    CheckReport::new(id, anchor, inputs, lhs, rhs, relation)
}

fn krs(k: u64, r: u32, s: u32) -> Vec<(&'static str, String)> {
    vec![
        ("k", k.to_string()),
        ("r", r.to_string()),
        ("s", s.to_string()),
    ]
}

fn run_job(job: &Job, cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let one = |c: CheckReport| Ok(vec![Report::Check(c)]);
    match *job {
        Job::Thm31 { k, r, s, ref eps } => one(check_theorem_3_1(k, r, s, eps)?),
        Job::Thm32 { variant, r, s } => {
            let n_list = cfg.n_list.clone().unwrap_or_else(|| vec![2, 5, 10, 20, 40]);
            let lambda = cfg.lambda.clone().unwrap_or_else(|| integer(2));
            let tol = cfg.tolerance.clone().unwrap_or_else(|| ratio(1, 20));
            let conv = check_theorem_3_2(variant, r, s, &n_list, &lambda, &tol)?;
            let mut out = Vec::with_capacity(2);
            // the trend compares the last row with the second; the first is
            // usually a degenerate window
            if let Some(&reference) = n_list.get(1) {
                if n_list.len() >= 3 && conv.gap_at(reference).is_some() {
                    out.push(Report::Check(theorem_3_2_trend(&conv, reference)?));
                }
            }
            out.insert(0, Report::Convergence(conv));
            Ok(out)
        }
        Job::Thm33Min { x, r, s } => {
            let averages = running_averages(x, r, s)?;
            let (argmin, min) = averages
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.cmp(b.1))
                .expect("x >= 1");
            let rep = if x == 1 {
                check_theorem_3_3(1, r, s)?
            } else {
                check(
                    format!("thm33.x1-{x}.r{r}.s{s}"),
                    "Theorem 3.3",
                    vec![
                        ("r", r.to_string()),
                        ("s", s.to_string()),
                        ("x_max", x.to_string()),
                    ],
                    min.clone(),
                    BigRational::zero(),
                    Relation::Gt,
                )
                .with_note(format!(
                    "lhs is the smallest average over 1 <= x <= {x}, attained at x = {}",
                    argmin + 1
                ))
            };
            one(rep)
        }
        Job::Thm33Limit { k, s } => {
            let limit = limit_r_infinity(k, s)?;
            let gap = |r| -> Result<BigRational> {
                Ok((weighted_average_value(k, r, s)? - &limit).abs())
            };
            let (g20, g40) = (gap(20)?, gap(40)?);
            let inputs = vec![
                ("k", k.to_string()),
                ("r_early", "20".into()),
                ("r_late", "40".into()),
                ("s", s.to_string()),
            ];
            let rep = if k == 1 {
                check(
                    format!("thm33.limit.k{k}.s{s}"),
                    "Theorem 3.3",
                    inputs,
                    g40,
                    g20,
                    Relation::Eq,
                )
                .with_note("W(1, r, s) = 1 = J_s(1)/1 for every r: both gaps are 0")
            } else {
                check(
                    format!("thm33.limit.k{k}.s{s}"),
                    "Theorem 3.3",
                    inputs,
                    g40,
                    g20,
                    Relation::Trend,
                )
                .with_note(format!(
                    "gap |W(k, r, s) - J_s(k)/k^s| with J_s(k)/k^s = {limit}"
                ))
            };
            one(rep)
        }
        Job::Thm34 { k, s } => one(check_theorem_3_4(k, s)?),
        Job::Corollary { k, r, s } => one(check_corollary(k, r, s)?),
        Job::DirectClosed { k, r, s } => one(check(
            format!("identity.direct-closed.k{k}.r{r}.s{s}"),
            "Theorem 3.1 proof, Bernoulli closed form",
            krs(k, r, s),
            weighted_average_direct(k, r, s)?,
            weighted_average_closed(k, r, s)?.value,
            Relation::Eq,
        )),
        Job::DeltaClosed { k, r, s } => one(check(
            format!("identity.delta-closed.k{k}.r{r}.s{s}"),
            "Theorem 3.1 proof, delta form",
            krs(k, r, s),
            weighted_average_delta_form(k, r, s)?,
            weighted_average_closed(k, r, s)?.value,
            Relation::Eq,
        )),
        Job::KOne { r, s } => {
            let blind = closed_form_unrestricted(&Factorization::one(), r, s);
            one(
                check(
                    format!("identity.k1.r{r}.s{s}"),
                    "Theorem 3.1 proof, closed form at k = 1",
                    krs(1, r, s),
                    weighted_average_value(1, r, s)?,
                    weighted_average_direct(1, r, s)?,
                    Relation::Eq,
                )
                .with_note(format!(
                    "the closed form evaluated at k = 1 gives {blind} = 1 - 1/(r+1), not the direct value 1"
                )),
            )
        }
        Job::ZeroSum { k, s } => one(check(
            format!("identity.zero-sum.k{k}.s{s}"),
            "Theorem 3.4 proof, zero period sum",
            vec![("k", k.to_string()), ("s", s.to_string())],
            integer(PeriodTable::new(k, s)?.period_sum()),
            BigRational::zero(),
            Relation::Eq,
        )),
        Job::CrsAgreement { k, s } => {
            let modulus = CrsQuery::new(k, s, 0)?.modulus();
            let mut mismatches = Vec::new();
            for j in 0..modulus {
                let q = CrsQuery::new(k, s, j)?;
                let closed = crs_closed(&q)?.value;
                let divisor = crs_divisor_oracle(&q)?;
                match crs_exponential_rounded(&q) {
                    Ok(exp) if exp == closed && divisor == closed => {}
                    Ok(exp) => mismatches.push(format!(
                        "j={j}: closed {closed}, divisor {divisor}, exponential {exp}"
                    )),
                    Err(e) => mismatches.push(format!("j={j}: {e}")),
                }
            }
            let mut rep = check(
                format!("identity.crs-oracles.k{k}.s{s}"),
                "Cohen-Ramanujan sum evaluation",
                vec![("k", k.to_string()), ("s", s.to_string())],
                integer(mismatches.len()),
                BigRational::zero(),
                Relation::Eq,
            )
            .with_note(format!(
                "lhs counts residues 0 <= j < {modulus} where the closed form, divisor sum and exponential sum disagree"
            ));
            for m in mismatches.into_iter().take(5) {
                rep = rep.with_note(m);
            }
            one(rep)
        }
    }
}

/// Runs a suite. Reports come back in a fixed order for a given
/// configuration, whatever the size of the current rayon pool.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let jobs = jobs(suite, cfg)?;
    let batches: Vec<Vec<Report>> = jobs
        .par_iter()
        .map(|job| run_job(job, cfg))
        .collect::<Result<_>>()?;
    Ok(batches.into_iter().flatten().collect())
}

/// `(passed, failed)`.
pub fn tally(reports: &[Report]) -> (usize, usize) {
    let passed = reports.iter().filter(|r| r.passed()).count();
    (passed, reports.len() - passed)
}
