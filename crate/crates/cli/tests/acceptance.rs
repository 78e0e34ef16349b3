//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fail.
//!
//! Run with `cargo test -p crs-lab --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_traits::Signed;
use sha2::{Digest, Sha256};

use crs_core::arith::factorize;
use crs_core::arith::Factorization;
use crs_core::crs::{
    crs_closed, crs_divisor_oracle, crs_exponential_oracle, CrsQuery, PeriodTable,
    EXPONENTIAL_TOLERANCE,
};
use crs_core::exact::{integer, ratio, BigRational};
use crs_core::verify::{
    check_corollary, check_theorem_3_1, check_theorem_3_2, check_theorem_3_4, reciprocal_prime_sum,
    theorem_3_1_instances, SequenceVariant,
};
use crs_core::weighted::{
    closed_form_unrestricted, limit_r_infinity, running_averages, weighted_average_closed,
    weighted_average_delta_form, weighted_average_direct, weighted_average_value,
};

type Verdict = Result<String, String>;

const GUARD: u64 = 10_000;

fn within_guard(k: u64, s: u32) -> bool {
    k.checked_pow(s).is_some_and(|m| m <= GUARD)
}

/// Collects failure descriptions; keeps the first few for the report line.
#[derive(Default)]
struct Failures {
    count: usize,
    shown: Vec<String>,
}

impl Failures {
    fn push(&mut self, what: impl Into<String>) {
        self.count += 1;
        if self.shown.len() < 6 {
            self.shown.push(what.into());
        }
    }

    fn verdict(self, checked: usize, ok: impl Into<String>) -> Verdict {
        if self.count == 0 {
            Ok(format!("{checked} cases; {}", ok.into()))
        } else {
            Err(format!(
                "{} of {checked} cases fail: {}",
                self.count,
                self.shown.join("; ")
            ))
        }
    }
}

fn lib<T>(r: crs_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("library error: {e}"))
}

fn time_limit(verdict: Verdict, elapsed: Duration, limit: Duration) -> Verdict {
    match verdict {
        Ok(d) if elapsed > limit => Err(format!("{d}; but took {elapsed:.1?} > {limit:?}")),
        other => other,
    }
}

fn c1_oracle_agreement() -> Verdict {
    let start = Instant::now();
    let mut fails = Failures::default();
    let mut checked = 0;
    let grid = (2..=30u64)
        .map(|k| (k, 1u32))
        .chain((2..=20).map(|k| (k, 2)));
    for (k, s) in grid {
        let modulus = k.pow(s);
        for j in 0..modulus {
            checked += 1;
            let q = lib(CrsQuery::new(k, s, j))?;
            let closed = lib(crs_closed(&q))?.value;
            let divisor = lib(crs_divisor_oracle(&q))?;
            if closed != divisor {
                fails.push(format!(
                    "k={k} s={s} j={j}: closed {closed} vs divisor {divisor}"
                ));
            }
            match crs_exponential_oracle(&q) {
                Ok(z) => {
                    let rounded = z.re.round();
                    if z.im.abs() >= EXPONENTIAL_TOLERANCE
                        || (z.re - rounded).abs() >= EXPONENTIAL_TOLERANCE
                        || rounded as i128 != closed
                    {
                        fails.push(format!("k={k} s={s} j={j}: exponential {z} vs {closed}"));
                    }
                }
                Err(e) => fails.push(format!("k={k} s={s} j={j}: {e}")),
            }
        }
    }
    let v = fails.verdict(
        checked,
        "closed = divisor = round(exponential), |Im|, |Re - n| < 1e-6",
    );
    time_limit(v, start.elapsed(), Duration::from_secs(60))
}

fn c2_zero_sum() -> Verdict {
    let mut fails = Failures::default();
    let mut checked = 0;
    for k in 2..=30u64 {
        for s in 1..=2 {
            if !within_guard(k, s) {
                continue;
            }
            checked += 1;
            let total = lib(PeriodTable::new(k, s))?.period_sum();
            if total != 0 {
                fails.push(format!("k={k} s={s}: sum {total}"));
            }
        }
    }
    fails.verdict(checked, "sum over one period is 0")
}

fn c3_three_forms() -> Verdict {
    let mut fails = Failures::default();
    let mut checked = 0;
    for k in 2..=12u64 {
        for s in 1..=2 {
            for r in 1..=8 {
                checked += 1;
                let direct = lib(weighted_average_direct(k, r, s))?;
                let closed = lib(weighted_average_closed(k, r, s))?.value;
                let delta = lib(weighted_average_delta_form(k, r, s))?;
                if direct != closed || delta != closed {
                    fails.push(format!("k={k} r={r} s={s}: {direct} / {closed} / {delta}"));
                }
            }
        }
    }
    for (r, want) in [(2, ratio(3, 8)), (3, ratio(7, 16))] {
        checked += 1;
        let got = lib(weighted_average_direct(2, r, 1))?;
        if got != want {
            fails.push(format!("W(2,{r},1) = {got}, expected {want}"));
        }
    }
    fails.verdict(
        checked,
        "direct = closed = delta; W(2,2,1) = 3/8, W(2,3,1) = 7/16",
    )
}

fn c4_k_one() -> Verdict {
    let mut fails = Failures::default();
    let mut checked = 0;
    for r in 1..=10u32 {
        for s in 1..=3 {
            checked += 1;
            let direct = lib(weighted_average_direct(1, r, s))?;
            let value = lib(weighted_average_value(1, r, s))?;
            let blind = closed_form_unrestricted(&Factorization::one(), r, s);
            let expected_blind = integer(1) - ratio(1, r + 1);
            if direct != integer(1) || value != integer(1) || blind != expected_blind {
                fails.push(format!(
                    "r={r} s={s}: direct {direct}, dispatch {value}, closed form {blind}"
                ));
            }
        }
    }
    fails.verdict(
        checked,
        "dispatch = direct = 1; closed form at k = 1 gives 1 - 1/(r+1)",
    )
}

fn c5_theorem_3_4() -> Verdict {
    let start = Instant::now();
    let mut fails = Failures::default();
    let mut checked = 0;
    let spot = lib(check_theorem_3_4(2, 1))?;
    if spot.lhs != integer(1) || spot.rhs != ratio(7, 8) || !spot.holds {
        fails.push(format!(
            "spot k=2 s=1: {} >= {} is {}",
            spot.lhs, spot.rhs, spot.holds
        ));
    }
    for k in 2..=20u64 {
        for s in 1..=2 {
            if !within_guard(k, s) {
                continue;
            }
            checked += 1;
            let rep = lib(check_theorem_3_4(k, s))?;
            if !rep.holds {
                fails.push(format!("k={k} s={s}: max {} < {}", rep.lhs, rep.rhs));
            }
        }
    }
    let v = fails.verdict(
        checked,
        "max partial >= J_2s(k)/(4k^s) + J_s(k)/2; spot 1 >= 7/8",
    );
    time_limit(v, start.elapsed(), Duration::from_secs(120))
}

fn c6_corollary() -> Verdict {
    let mut fails = Failures::default();
    let mut checked = 0;
    for k in 1..=30u64 {
        for s in 1..=2 {
            for r in 1..=10 {
                checked += 1;
                let rep = lib(check_corollary(k, r, s))?;
                if !rep.holds {
                    fails.push(format!("k={k} r={r} s={s}: {} > {}", rep.lhs, rep.rhs));
                }
                if k == 1 && rep.lhs != integer(1) - ratio(1, r + 1) {
                    fails.push(format!(
                        "k=1 r={r} s={s}: lhs {} is not 1 - 1/(r+1)",
                        rep.lhs
                    ));
                }
            }
        }
    }
    fails.verdict(
        checked,
        "|1/2 + tail k^s/J_s(k)| <= k^(s(s-1)) 2^omega(k); k = 1 gives 1 - 1/(r+1)",
    )
}

fn c7_theorem_3_3() -> Verdict {
    let mut fails = Failures::default();
    let mut checked = 0;
    for r in 1..=10 {
        for s in 1..=2 {
            for (i, avg) in lib(running_averages(200, r, s))?.iter().enumerate() {
                checked += 1;
                if !avg.is_positive() {
                    fails.push(format!("x={} r={r} s={s}: average {avg}", i + 1));
                }
            }
        }
    }
    for k in 1..=10u64 {
        for s in 1..=2 {
            checked += 1;
            let limit = lib(limit_r_infinity(k, s))?;
            let gap = |r| lib(weighted_average_value(k, r, s)).map(|w| (w - &limit).abs());
            let (g20, g40) = (gap(20)?, gap(40)?);
            if g40 >= g20 {
                fails.push(format!(
                    "k={k} s={s}: gap at r=40 is {g40}, at r=20 is {g20}"
                ));
            }
        }
    }
    fails.verdict(
        checked,
        "averages > 0 for x <= 200; gap to J_s(k)/k^s shrinks from r=20 to r=40",
    )
}

fn c8_theorem_3_2() -> Verdict {
    let mut fails = Failures::default();
    let mut checked = 0;
    let ns = [2, 5, 10, 20, 40];
    let tol = ratio(1, 20);
    let mut finals = Vec::new();
    for variant in [SequenceVariant::Window, SequenceVariant::WindowTimes2] {
        for r in 2..=3 {
            for s in 1..=2 {
                checked += 1;
                let rep = lib(check_theorem_3_2(variant, r, s, &ns, &integer(2), &tol))?;
                let tag = format!("{variant} r={r} s={s}");
                if rep.rows.iter().any(|row| row.gap.is_none()) {
                    fails.push(format!("{tag}: unevaluated row"));
                    continue;
                }
                let (g5, g40) = (rep.gap_at(5).unwrap(), rep.gap_at(40).unwrap());
                finals.push(format!("{tag} {:.4}", to_f64(g40)));
                let mut why = Vec::new();
                if g40 >= g5 {
                    why.push(format!(
                        "gap(40) {:.4} >= gap(5) {:.4}",
                        to_f64(g40),
                        to_f64(g5)
                    ));
                }
                if *g40 >= tol {
                    why.push(format!("gap(40) {:.4} >= 1/20", to_f64(g40)));
                }
                if !why.is_empty() {
                    fails.push(format!("{tag}: {}", why.join(" and ")));
                }
            }
        }
    }
    fails.verdict(checked, format!("final gaps {}", finals.join(", ")))
}

fn to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

fn c9_theorem_3_1() -> Verdict {
    let mut fails = Failures::default();
    let mut checked = 0;
    let mut met = 0;
    for eps in [ratio(1, 2), ratio(1, 4)] {
        for k in lib(theorem_3_1_instances(&eps))? {
            let kf = lib(factorize(k))?;
            let hypothesis = reciprocal_prime_sum(&kf) <= &eps / integer(2);
            for r in 2..=8 {
                for s in 1..=2 {
                    checked += 1;
                    let rep = lib(check_theorem_3_1(k, r, s, &eps))?;
                    if rep.hypothesis_met != Some(hypothesis) {
                        fails.push(format!(
                            "k={k} eps={eps}: hypothesis recorded as {:?}",
                            rep.hypothesis_met
                        ));
                        continue;
                    }
                    if !hypothesis {
                        continue;
                    }
                    met += 1;
                    let w = lib(weighted_average_value(k, r, s))?;
                    let center = lib(limit_r_infinity(k, s))? - ratio(1, r + 1);
                    let bound = num_traits::Pow::pow(&eps, s);
                    if (w - center).abs() >= bound || !rep.holds {
                        fails.push(format!("k={k} r={r} s={s} eps={eps}: conclusion fails"));
                    }
                }
            }
        }
    }
    fails.verdict(
        checked,
        format!("hypothesis met in {met}; each of those within eps^s"),
    )
}

fn run_verify_all(threads: usize) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_crs-lab"))
        .args(["verify", "all", "--threads", &threads.to_string()])
        .output()
        .map_err(|e| format!("spawning crs-lab: {e}"))?;
    match out.status.code() {
        Some(0) | Some(1) => Ok(out.stdout),
        other => Err(format!(
            "crs-lab exited with {other:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        )),
    }
}

fn c10_determinism() -> Verdict {
    let runs = [run_verify_all(1)?, run_verify_all(1)?, run_verify_all(4)?];
    if runs.iter().any(|r| r != &runs[0]) {
        return Err("verify all output differs between runs".into());
    }
    let digest: String = Sha256::digest(&runs[0])
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    let golden_path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/golden/verify_all.sha256"
    );
    let golden =
        std::fs::read_to_string(golden_path).map_err(|e| format!("reading golden digest: {e}"))?;
    if golden.trim() != digest {
        return Err(format!(
            "digest {digest} differs from golden {}",
            golden.trim()
        ));
    }
    Ok(format!(
        "3 runs (1, 1, 4 threads) byte-identical, {} bytes, sha256 matches golden",
        runs[0].len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("oracle triple agreement", c1_oracle_agreement),
        ("zero-sum identity", c2_zero_sum),
        ("three-form agreement", c3_three_forms),
        ("k = 1 anomaly", c4_k_one),
        ("Theorem 3.4 lower bound", c5_theorem_3_4),
        ("Corollary bound", c6_corollary),
        ("Theorem 3.3 positivity and r-limit", c7_theorem_3_3),
        ("Theorem 3.2 window trends", c8_theorem_3_2),
        ("Theorem 3.1 instances", c9_theorem_3_1),
        ("determinism of verify all", c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let elapsed = start.elapsed();
        match verdict {
            Ok(detail) => println!("PASS {:>2} {name} ({elapsed:.1?}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({elapsed:.1?}): {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
