//! One function per subcommand. Each returns the rendered output and whether
//! the run counts as a success.

use anyhow::Context;
use rayon::prelude::*;

use crs_core::arith::Factorization;
use crs_core::crs::{crs_closed, CrsQuery, ORACLE_GUARD};
use crs_core::exact::{format_rational, BigRational};
use crs_core::verify::{check_theorem_3_2, run_suite, tally, Report, SuiteConfig};
use crs_core::weighted::{
    bernoulli_tail, leading_term, weighted_average_closed, weighted_average_value,
};

use crate::args::{
    resolve, ComputeTarget, CrsTableArgs, Format, SeqArgs, VerifyArgs, WeightedTableArgs,
};
use crate::table::{Row, Table};

pub struct Outcome {
    pub text: String,
    pub success: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            success: true,
        }
    }
}

pub fn compute(target: &ComputeTarget) -> anyhow::Result<Outcome> {
    let value = match *target {
        ComputeTarget::Crs { k, s, j } => crs_closed(&CrsQuery::new(k, s, j)?)?.value.to_string(),
        ComputeTarget::Weighted { k, r, s } => format_rational(&weighted_average_value(k, r, s)?),
    };
    Ok(Outcome::ok(value + "\n"))
}

const CRS_COLUMNS: &[&str] = &["k", "s", "j", "value", "d", "gcd_s"];
const WEIGHTED_COLUMNS: &[&str] = &[
    "k",
    "r",
    "s",
    "value",
    "leading",
    "bernoulli_tail",
    "delta_correction",
];
const SEQ_COLUMNS: &[&str] = &["n", "k_n", "omega", "value", "target", "gap"];

fn crs_block(k: u64, s: u32, js: &Option<Vec<u64>>) -> Vec<Row> {
    let params = || vec![k.to_string(), s.to_string()];
    let modulus = match CrsQuery::new(k, s, 0) {
        Ok(q) => q.modulus(),
        Err(e) => return vec![Row::failed(params(), CRS_COLUMNS.len(), e)],
    };
    let js: Vec<u64> = match js {
        Some(js) => js.clone(),
        None if modulus > ORACLE_GUARD => {
            let e =
                format!("full period k^s = {modulus} exceeds the guard {ORACLE_GUARD}; pass --j");
            return vec![Row::failed(params(), CRS_COLUMNS.len(), e)];
        }
        None => (1..=modulus).collect(),
    };
    js.into_iter()
        .map(|j| {
            let mut fields = params();
            fields.push(j.to_string());
            match CrsQuery::new(k, s, j).and_then(|q| crs_closed(&q)) {
                Ok(ev) => {
                    fields.extend([ev.value.to_string(), ev.d.to_string(), ev.gcd_s.to_string()]);
                    Row::ok(fields)
                }
                Err(e) => Row::failed(fields, CRS_COLUMNS.len(), e),
            }
        })
        .collect()
}

pub fn table_crs(args: &CrsTableArgs) -> anyhow::Result<Outcome> {
    let ks = resolve(&args.k, args.k_max, "k")?;
    let grid: Vec<(u64, u32)> = ks
        .iter()
        .flat_map(|&k| args.s.iter().map(move |&s| (k, s)))
        .collect();
    let rows = grid
        .par_iter()
        .map(|&(k, s)| crs_block(k, s, &args.j))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let table = Table {
        columns: CRS_COLUMNS,
        rows,
    };
    Ok(Outcome::ok(table.render(args.output.format)))
}

fn weighted_row(k: u64, r: u32, s: u32) -> Row {
    let params = vec![k.to_string(), r.to_string(), s.to_string()];
    let computed = if k == 1 {
        weighted_average_value(1, r, s).map(|value| {
            let one = Factorization::one();
            [value, leading_term(&one, s), bernoulli_tail(&one, r, s)]
                .iter()
                .map(format_rational)
                .chain([String::new()])
                .collect::<Vec<_>>()
        })
    } else {
        weighted_average_closed(k, r, s).map(|b| {
            let delta = b
                .delta_correction
                .as_ref()
                .map(format_rational)
                .unwrap_or_default();
            vec![
                format_rational(&b.value),
                format_rational(&b.leading),
                format_rational(&b.bernoulli_tail),
                delta,
            ]
        })
    };
    match computed {
        Ok(values) => Row::ok(params.into_iter().chain(values).collect()),
        Err(e) => Row::failed(params, WEIGHTED_COLUMNS.len(), e),
    }
}

pub fn table_weighted(args: &WeightedTableArgs) -> anyhow::Result<Outcome> {
    let ks = resolve(&args.k, args.k_max, "k")?;
    let rs: Vec<u32> = resolve(&args.r, args.r_max.map(u64::from), "r")?;
    let mut grid = Vec::new();
    for &k in &ks {
        for &r in &rs {
            for &s in &args.s {
                grid.push((k, r, s));
            }
        }
    }
    let rows = grid
        .par_iter()
        .map(|&(k, r, s)| weighted_row(k, r, s))
        .collect();
    let table = Table {
        columns: WEIGHTED_COLUMNS,
        rows,
    };
    Ok(Outcome::ok(table.render(args.output.format)))
}

pub fn seq(args: &SeqArgs) -> anyhow::Result<Outcome> {
    let report = check_theorem_3_2(
        args.variant,
        args.r,
        args.s,
        &args.n,
        &args.lambda,
        &args.tolerance,
    )?;
    let text = match args.output.format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&report)?;
            text.push('\n');
            text
        }
        Format::Csv => {
            let opt = |q: &Option<BigRational>| q.as_ref().map(format_rational).unwrap_or_default();
            let rows = report
                .rows
                .iter()
                .map(|row| {
                    Row::ok(vec![
                        row.n.to_string(),
                        row.k_n.to_string(),
                        row.omega.to_string(),
                        opt(&row.value),
                        format_rational(&row.target),
                        opt(&row.gap),
                    ])
                })
                .collect();
            Table {
                columns: SEQ_COLUMNS,
                rows,
            }
            .to_csv()
        }
    };
    Ok(Outcome::ok(text))
}

const SUMMARY_COLUMNS: &[&str] = &[
    "check_id",
    "paper_anchor",
    "relation",
    "lhs",
    "rhs",
    "holds",
    "margin",
];

fn summary_row(report: &Report) -> Row {
    match report {
        Report::Check(c) => Row::ok(vec![
            c.check_id.clone(),
            c.paper_anchor.clone(),
            c.relation.to_string(),
            format_rational(&c.lhs),
            format_rational(&c.rhs),
            c.holds.to_string(),
            format_rational(&c.margin),
        ]),
        Report::Convergence(c) => {
            let gap = c.final_gap.as_ref();
            Row::ok(vec![
                c.sequence_id.clone(),
                c.paper_anchor.clone(),
                "<".into(),
                gap.map(format_rational).unwrap_or_default(),
                format_rational(&c.tolerance),
                c.converged.to_string(),
                gap.map(|g| format_rational(&(&c.tolerance - g)))
                    .unwrap_or_default(),
            ])
        }
    }
}

pub fn verify(args: &VerifyArgs) -> anyhow::Result<Outcome> {
    let cfg = SuiteConfig {
        k: args.k.clone(),
        k_max: args.k_max,
        r: args.r.clone(),
        r_max: args.r_max,
        s: args.s.clone(),
        x: args.x,
        eps: args.eps.clone(),
        lambda: args.lambda.clone(),
        n_list: args.n.clone(),
        variants: args.variant.clone(),
        tolerance: args.tolerance.clone(),
    };
    let reports = run_suite(args.suite, &cfg).with_context(|| format!("suite {}", args.suite))?;
    let (passed, failed) = tally(&reports);
    for r in reports.iter().filter(|r| !r.passed()) {
        eprintln!("FAIL {}", r.id());
    }
    eprintln!("verify {}: {passed} passed, {failed} failed", args.suite);
    let text = match args.format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&reports)?;
            text.push('\n');
            text
        }
        Format::Csv => Table {
            columns: SUMMARY_COLUMNS,
            rows: reports.iter().map(summary_row).collect(),
        }
        .to_csv(),
    };
    Ok(Outcome {
        text,
        success: failed == 0,
    })
}
