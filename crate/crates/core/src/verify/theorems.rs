//! One function per theorem: evaluate both sides exactly and package the
//! comparison as a report.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Signed, Zero};

use super::report::{CheckReport, ConvergenceReport, ConvergenceRow, Relation};
use super::sequences::{
    require_increasing, sequence_target, sequence_term, window_times2_stated_target,
    SequenceVariant,
};
use crate::arith::{factorize, Factorization};
use crate::crs::{crs_max_partial, crs_max_partial_all_cutoffs};
use crate::exact::{from_biguint, integer, ratio, BigRational};
use crate::weighted::{
    average_over_k, bernoulli_tail, leading_term, limit_r_infinity_of, weighted_average_value_of,
};
use crate::{Error, Result};

fn rs_inputs(r: u32, s: u32) -> [(&'static str, String); 2] {
    [("r", r.to_string()), ("s", s.to_string())]
}

/// `sum_{p | k} 1/p`.
pub fn reciprocal_prime_sum(k: &Factorization) -> BigRational {
    k.primes()
        .fold(BigRational::zero(), |acc, p| acc + ratio(1, p))
}

/// Checks `|W(k, r, s) - (J_s(k)/k^s - 1/(r+1))| < eps^s` under the hypothesis
/// `sum_{p | k} 1/p <= eps/2`.
///
/// When the hypothesis fails the report compares `sum 1/p > eps/2` instead,
/// so `holds` stays literal and `hypothesis_met` is `false`.
pub fn check_theorem_3_1(k: u64, r: u32, s: u32, eps: &BigRational) -> Result<CheckReport> {
    if k < 2 {
        return Err(Error::domain("k", format!("needs k >= 2, got {k}")));
    }
    if r < 2 {
        return Err(Error::domain("r", format!("needs r >= 2, got {r}")));
    }
    if s == 0 {
        return Err(Error::NotPositive("s"));
    }
    if !eps.is_positive() || *eps >= BigRational::one() {
        return Err(Error::domain(
            "eps",
            format!("needs 0 < eps < 1, got {eps}"),
        ));
    }
    let kf = factorize(k)?;
    let [r_in, s_in] = rs_inputs(r, s);
    let inputs = vec![("eps", eps.to_string()), ("k", k.to_string()), r_in, s_in];

    let prime_sum = reciprocal_prime_sum(&kf);
    let half_eps = eps / integer(2);
    if prime_sum > half_eps {
        return Ok(CheckReport::new(
            format!("thm31.k{k}.r{r}.s{s}.eps{eps}"),
            "Theorem 3.1",
            inputs,
            prime_sum,
            half_eps,
            Relation::Gt,
        )
        .with_hypothesis(false)
        .with_note(
            "hypothesis not met: sum of 1/p over p | k exceeds eps/2; conclusion not evaluated",
        ));
    }

    let value = weighted_average_value_of(&kf, r, s)?;
    let center = limit_r_infinity_of(&kf, s) - ratio(1, r + 1);
    let stated_center = leading_term(&kf, s) - ratio(1, r + 1);
    let lhs = (&value - &center).abs();
    let rhs = Pow::pow(eps, s);
    Ok(CheckReport::new(
        format!("thm31.k{k}.r{r}.s{s}.eps{eps}"),
        "Theorem 3.1",
        inputs,
        lhs,
        rhs,
        Relation::Lt,
    )
    .with_hypothesis(true)
    .with_note(format!("hypothesis: sum 1/p = {prime_sum} <= eps/2 = {half_eps}"))
    .with_note(format!(
        "centre J_s(k)/k^s - 1/(r+1) = {center}; the statement's J_s(k)/(2k^s) - 1/(r+1) = {stated_center} is off by J_s(k)/(2k^s)"
    )))
}

/// Gaps `|W(k_n, r, s) - target|` along a sequence. Rows with `k_n = 1` are
/// kept but not evaluated.
pub fn check_theorem_3_2(
    variant: SequenceVariant,
    r: u32,
    s: u32,
    n_list: &[u64],
    lambda: &BigRational,
    tolerance: &BigRational,
) -> Result<ConvergenceReport> {
    if r == 0 {
        return Err(Error::NotPositive("r"));
    }
    if s == 0 {
        return Err(Error::NotPositive("s"));
    }
    require_increasing(n_list, "n list")?;
    let target = sequence_target(variant, r, s)?;
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let k_n = sequence_term(variant, n, lambda)?;
        let row = if k_n.is_one() {
            ConvergenceRow {
                n,
                k_n: BigUint::one(),
                omega: 0,
                value: None,
                target: target.clone(),
                gap: None,
                note: Some("empty window, k_n = 1: skipped".into()),
            }
        } else {
            let value = weighted_average_value_of(&k_n, r, s)?;
            let gap = (&value - &target).abs();
            ConvergenceRow {
                n,
                k_n: k_n.value().clone(),
                omega: k_n.omega(),
                value: Some(value),
                target: target.clone(),
                gap: Some(gap),
                note: None,
            }
        };
        rows.push(row);
    }
    let final_gap = rows.iter().rev().find_map(|row| row.gap.clone());
    let converged = final_gap.as_ref().is_some_and(|g| g < tolerance);
    let mut notes = Vec::new();
    if variant == SequenceVariant::WindowTimes2 {
        let stated = window_times2_stated_target(r, s)?;
        notes.push(format!(
            "target (2^s - 1)/2^s - S_r(2^s)/2^(s(r+1)) = {target}; the statement's 1/2 - S_r(2^s)/2^(s(r+1)) = {stated}"
        ));
    }
    Ok(ConvergenceReport {
        sequence_id: format!("thm32.{variant}.r{r}.s{s}"),
        paper_anchor: "Theorem 3.2".into(),
        r,
        s,
        lambda: lambda.clone(),
        rows,
        final_gap,
        tolerance: tolerance.clone(),
        converged,
        notes,
    })
}

/// Compares the gap at the last evaluated row with the gap at `reference_n`:
/// the later gap must be strictly smaller.
pub fn theorem_3_2_trend(report: &ConvergenceReport, reference_n: u64) -> Result<CheckReport> {
    let last = report
        .rows
        .iter()
        .rev()
        .find(|row| row.gap.is_some())
        .ok_or_else(|| Error::domain("sequence", "no evaluated rows"))?;
    let earlier = report.gap_at(reference_n).ok_or_else(|| {
        Error::domain(
            "reference n",
            format!("no evaluated row at n = {reference_n}"),
        )
    })?;
    let (r_in, s_in) = (report.r.to_string(), report.s.to_string());
    Ok(CheckReport::new(
        format!("{}.trend", report.sequence_id),
        "Theorem 3.2",
        vec![
            ("lambda", report.lambda.to_string()),
            ("n_early", reference_n.to_string()),
            ("n_late", last.n.to_string()),
            ("r", r_in),
            ("s", s_in),
        ],
        last.gap.clone().expect("row selected for its gap"),
        earlier.clone(),
        Relation::Trend,
    ))
}

/// `(1/x) sum_{k <= x} W(k, r, s) > 0`.
pub fn check_theorem_3_3(x: u64, r: u32, s: u32) -> Result<CheckReport> {
    let lhs = average_over_k(x, r, s)?;
    let [r_in, s_in] = rs_inputs(r, s);
    Ok(CheckReport::new(
        format!("thm33.x{x}.r{r}.s{s}"),
        "Theorem 3.3",
        vec![r_in, s_in, ("x", x.to_string())],
        lhs,
        BigRational::zero(),
        Relation::Gt,
    ))
}

/// `max_N |sum_{j <= N^s} c_k^(s)(j)| >= J_{2s}(k)/(4k^s) + J_s(k)/2`.
pub fn check_theorem_3_4(k: u64, s: u32) -> Result<CheckReport> {
    let best = crs_max_partial(k, s)?;
    let all = crs_max_partial_all_cutoffs(k, s)?;
    let kf = factorize(k)?;
    let k_s = from_biguint(&kf.value().pow(s));
    let rhs = from_biguint(&kf.jordan_totient(2 * s)) / (integer(4) * k_s)
        + from_biguint(&kf.jordan_totient(s)) / integer(2);
    Ok(CheckReport::new(
        format!("thm34.k{k}.s{s}"),
        "Theorem 3.4",
        vec![("k", k.to_string()), ("s", s.to_string())],
        integer(BigInt::from(best.max_abs)),
        rhs,
        Relation::Ge,
    )
    .with_note(format!(
        "maximum over cutoffs N^s attained at N = {}",
        best.argmax
    ))
    .with_note(format!(
        "maximum over all cutoffs M is {} at M = {}",
        all.max_abs, all.argmax
    )))
}

/// `|1/2 + tail * k^s / J_s(k)| <= k^{s(s-1)} 2^{omega(k)}`.
pub fn check_corollary(k: u64, r: u32, s: u32) -> Result<CheckReport> {
    if r == 0 {
        return Err(Error::NotPositive("r"));
    }
    if s == 0 {
        return Err(Error::NotPositive("s"));
    }
    let kf = factorize(k)?;
    let scale = from_biguint(&kf.value().pow(s)) / from_biguint(&kf.jordan_totient(s));
    let lhs = (ratio(1, 2) + bernoulli_tail(&kf, r, s) * scale).abs();
    let rhs = from_biguint(&(kf.value().pow(s * (s - 1)) << kf.omega()));
    let [r_in, s_in] = rs_inputs(r, s);
    Ok(CheckReport::new(
        format!("corollary.k{k}.r{r}.s{s}"),
        "Corollary (after Theorem 3.4)",
        vec![("k", k.to_string()), r_in, s_in],
        lhs,
        rhs,
        Relation::Le,
    ))
}
