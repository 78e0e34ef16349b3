//! Structured evidence for one check: inputs, both sides, the relation and
//! whether it holds. Rationals serialize as `"p/q"` strings and integers as
//! full-precision decimal strings.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::exact::BigRational;

fn ser_rational<S: Serializer>(q: &BigRational, ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_str(q)
}

fn ser_opt_rational<S: Serializer>(q: &Option<BigRational>, ser: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => ser.collect_str(q),
        None => ser.serialize_none(),
    }
}

fn ser_biguint<S: Serializer>(n: &BigUint, ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_str(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
    /// A later gap (`lhs`) strictly below an earlier one (`rhs`).
    #[serde(rename = "trend")]
    Trend,
}

impl Relation {
    pub fn evaluate(self, lhs: &BigRational, rhs: &BigRational) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Lt | Relation::Trend => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Ge => lhs >= rhs,
        }
    }

    /// `|lhs - rhs|` for equality, otherwise the signed slack (positive when the
    /// relation holds with room to spare).
    pub fn margin(self, lhs: &BigRational, rhs: &BigRational) -> BigRational {
        match self {
            Relation::Eq => (lhs - rhs).abs(),
            Relation::Lt | Relation::Le | Relation::Trend => rhs - lhs,
            Relation::Gt | Relation::Ge => lhs - rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
            Relation::Trend => "trend",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub paper_anchor: String,
    pub inputs: BTreeMap<String, String>,
    #[serde(serialize_with = "ser_rational")]
    pub lhs: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub rhs: BigRational,
    pub relation: Relation,
    /// Always `relation.evaluate(lhs, rhs)`.
    pub holds: bool,
    #[serde(serialize_with = "ser_rational")]
    pub margin: BigRational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypothesis_met: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(
        check_id: impl Into<String>,
        paper_anchor: impl Into<String>,
        inputs: Vec<(&str, String)>,
        lhs: BigRational,
        rhs: BigRational,
        relation: Relation,
    ) -> Self {
        CheckReport {
            check_id: check_id.into(),
            paper_anchor: paper_anchor.into(),
            inputs: inputs
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            holds: relation.evaluate(&lhs, &rhs),
            margin: relation.margin(&lhs, &rhs),
            lhs,
            rhs,
            relation,
            hypothesis_met: None,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn with_hypothesis(mut self, met: bool) -> Self {
        self.hypothesis_met = Some(met);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvergenceRow {
    pub n: u64,
    #[serde(serialize_with = "ser_biguint")]
    pub k_n: BigUint,
    pub omega: usize,
    #[serde(serialize_with = "ser_opt_rational")]
    pub value: Option<BigRational>,
    #[serde(serialize_with = "ser_rational")]
    pub target: BigRational,
    #[serde(serialize_with = "ser_opt_rational")]
    pub gap: Option<BigRational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvergenceReport {
    pub sequence_id: String,
    pub paper_anchor: String,
    pub r: u32,
    pub s: u32,
    #[serde(serialize_with = "ser_rational")]
    pub lambda: BigRational,
    pub rows: Vec<ConvergenceRow>,
    /// Gap of the last row that was not skipped.
    #[serde(serialize_with = "ser_opt_rational")]
    pub final_gap: Option<BigRational>,
    #[serde(serialize_with = "ser_rational")]
    pub tolerance: BigRational,
    /// `final_gap < tolerance`; false when every row was skipped.
    pub converged: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ConvergenceReport {
    /// Gap recorded for `n`, if that row exists and was evaluated.
    pub fn gap_at(&self, n: u64) -> Option<&BigRational> {
        self.rows.iter().find(|row| row.n == n)?.gap.as_ref()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Report {
    Check(CheckReport),
    Convergence(ConvergenceReport),
}

impl Report {
    pub fn passed(&self) -> bool {
        match self {
            Report::Check(c) => c.holds,
            Report::Convergence(c) => c.converged,
        }
    }

    pub fn id(&self) -> &str {
        match self {
            Report::Check(c) => &c.check_id,
            Report::Convergence(c) => &c.sequence_id,
        }
    }
}

impl From<CheckReport> for Report {
    fn from(c: CheckReport) -> Self {
        Report::Check(c)
    }
}

impl From<ConvergenceReport> for Report {
    fn from(c: ConvergenceReport) -> Self {
        Report::Convergence(c)
    }
}
