//! Serializable report rows and the envelope every command emits.
//!
//! Big integers and rationals are carried as strings so JSON consumers never
//! lose precision.

use serde::{Deserialize, Serialize};
use thetacert_core::ampleness::{ordering_name, Decomposition, DimensionRow, TrigComparison};
use thetacert_core::certify::{
    Certificate, Comparison, Lemma7Row, SnTableRow, Strategy, Theorem6Params,
};

/// A row that can also be laid out as a table.
pub trait Tabular {
    fn columns() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Every expectation attached to the command held, or there were none.
    Ok,
    /// Some expectation failed.
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report<T> {
    pub command: String,
    pub status: Status,
    pub rows: Vec<T>,
    pub notes: Vec<String>,
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleRecord {
    pub a: String,
    pub d: String,
    pub modulus_exp: u32,
    pub integer_at_all_primes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub n: u32,
    pub s: u32,
    pub step: u32,
    pub mode: String,
    pub verdict: String,
    pub strategy: String,
    pub level: Option<u32>,
    pub witness: Option<String>,
    pub v2: Option<i64>,
    pub runner_up_v2: Option<i64>,
    pub nu: Option<i64>,
    pub modulus_exp: Option<u32>,
    pub classes: Option<u64>,
    pub counterexample: Option<CounterexampleRecord>,
    pub assumptions: Vec<String>,
    pub detail: String,
}

impl From<&Certificate> for CertificateRecord {
    fn from(c: &Certificate) -> Self {
        let mut r = CertificateRecord {
            n: c.spec.n,
            s: c.spec.s,
            step: c.spec.step,
            mode: c.spec.mode.name().to_string(),
            verdict: c.verdict.name().to_string(),
            strategy: c.strategy.name().to_string(),
            level: None,
            witness: None,
            v2: None,
            runner_up_v2: None,
            nu: None,
            modulus_exp: None,
            classes: None,
            counterexample: None,
            assumptions: c.assumptions.clone(),
            detail: c.detail.clone(),
        };
        match &c.strategy {
            Strategy::UniqueMinimalTerm {
                level,
                witness,
                v2,
                runner_up_v2,
            } => {
                r.level = Some(*level);
                r.witness = Some(witness.to_string());
                r.v2 = Some(*v2);
                r.runner_up_v2 = *runner_up_v2;
            }
            Strategy::ResidueEnumeration {
                modulus_exp,
                classes,
                counterexample,
                ..
            } => {
                r.modulus_exp = Some(*modulus_exp);
                r.classes = Some(*classes);
                r.counterexample = counterexample.as_ref().map(|ce| CounterexampleRecord {
                    a: ce.a.to_string(),
                    d: ce.d.to_string(),
                    modulus_exp: ce.modulus_exp,
                    integer_at_all_primes: ce.integer_at_all_primes,
                });
            }
            Strategy::Congruence { nu, .. } => r.nu = Some(*nu),
        }
        r
    }
}

impl Tabular for CertificateRecord {
    fn columns() -> &'static [&'static str] {
        &[
            "n", "s", "step", "mode", "verdict", "strategy", "witness", "v2", "nu", "detail",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.s.to_string(),
            self.step.to_string(),
            self.mode.clone(),
            self.verdict.clone(),
            self.strategy.clone(),
            opt(&self.witness),
            opt(&self.v2),
            opt(&self.nu),
            self.detail.clone(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Formula1Record {
    pub n: u32,
    pub h: u32,
    pub j: u32,
    pub n_minus_h: u32,
    pub rho: String,
    pub v2: String,
    pub pass: bool,
}

impl Tabular for Formula1Record {
    fn columns() -> &'static [&'static str] {
        &["n", "h", "j", "n_minus_h", "rho", "v2", "pass"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.h.to_string(),
            self.j.to_string(),
            self.n_minus_h.to_string(),
            self.rho.clone(),
            self.v2.clone(),
            self.pass.to_string(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaRecord {
    pub n: u32,
    pub s: u32,
    pub step: u32,
    pub mode: String,
    pub terms: usize,
    pub min_v2: String,
    pub form: String,
}

impl Tabular for DeltaRecord {
    fn columns() -> &'static [&'static str] {
        &["n", "s", "step", "mode", "terms", "min_v2", "form"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.s.to_string(),
            self.step.to_string(),
            self.mode.clone(),
            self.terms.to_string(),
            self.min_v2.clone(),
            self.form.clone(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnRecord {
    pub n: u32,
    pub computed_sn: Option<u32>,
    pub single_level_sn: Option<u32>,
    pub reference_sn: u32,
    pub verdict: String,
    pub inconclusive: bool,
}

impl From<&SnTableRow> for SnRecord {
    fn from(r: &SnTableRow) -> Self {
        SnRecord {
            n: r.n,
            computed_sn: r.computed_sn,
            single_level_sn: r.single_level_sn,
            reference_sn: r.reference_sn,
            verdict: r.verdict.name().to_string(),
            inconclusive: r.inconclusive,
        }
    }
}

impl SnRecord {
    pub fn is_weaker(&self) -> bool {
        self.verdict == Comparison::Weaker.name()
    }
}

impl Tabular for SnRecord {
    fn columns() -> &'static [&'static str] {
        &["n", "computed_sn", "single_level_sn", "reference_sn", "verdict"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            opt(&self.computed_sn),
            opt(&self.single_level_sn),
            self.reference_sn.to_string(),
            self.verdict.clone(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRecord {
    pub e: u32,
    pub gap_dimension: u32,
    pub min_dimension: u32,
    pub reference_min_dimension: u32,
    pub verdict: String,
}

impl DimRecord {
    pub fn new(row: &DimensionRow, reference: u32) -> Self {
        DimRecord {
            e: row.e,
            gap_dimension: row.gap_dimension,
            min_dimension: row.min_dimension,
            reference_min_dimension: reference,
            verdict: if row.min_dimension == reference {
                "MATCH"
            } else {
                "MISMATCH"
            }
            .to_string(),
        }
    }

    pub fn matches(&self) -> bool {
        self.min_dimension == self.reference_min_dimension
    }
}

impl Tabular for DimRecord {
    fn columns() -> &'static [&'static str] {
        &[
            "e",
            "gap_dimension",
            "min_dimension",
            "reference_min_dimension",
            "verdict",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.e.to_string(),
            self.gap_dimension.to_string(),
            self.min_dimension.to_string(),
            self.reference_min_dimension.to_string(),
            self.verdict.clone(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma7Record {
    pub m: u32,
    pub s: u32,
    pub n: u32,
    pub verdict: String,
    pub strategy: String,
    pub witness: Option<String>,
    pub v2: Option<i64>,
    pub expected_v2: i64,
    pub witness_matches: bool,
}

impl From<&Lemma7Row> for Lemma7Record {
    fn from(r: &Lemma7Row) -> Self {
        let w = r.certificate.witness();
        Lemma7Record {
            m: r.m,
            s: r.s,
            n: r.n,
            verdict: r.certificate.verdict.name().to_string(),
            strategy: r.certificate.strategy.name().to_string(),
            witness: w.map(|(_, w)| w.to_string()),
            v2: w.map(|(v, _)| v),
            expected_v2: r.expected_v2,
            witness_matches: r.witness_matches,
        }
    }
}

impl Tabular for Lemma7Record {
    fn columns() -> &'static [&'static str] {
        &[
            "m",
            "s",
            "n",
            "verdict",
            "witness",
            "v2",
            "expected_v2",
            "witness_matches",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.m.to_string(),
            self.s.to_string(),
            self.n.to_string(),
            self.verdict.clone(),
            opt(&self.witness),
            opt(&self.v2),
            self.expected_v2.to_string(),
            self.witness_matches.to_string(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem6Record {
    pub n: u32,
    pub t_n: i64,
    pub m: i64,
    pub s: i64,
    pub lemma7_condition: bool,
    pub s_within_bound: bool,
}

impl From<&Theorem6Params> for Theorem6Record {
    fn from(p: &Theorem6Params) -> Self {
        Theorem6Record {
            n: p.n,
            t_n: p.t_n,
            m: p.m,
            s: p.s,
            lemma7_condition: p.lemma7_condition,
            s_within_bound: p.s_within_bound,
        }
    }
}

impl Tabular for Theorem6Record {
    fn columns() -> &'static [&'static str] {
        &["n", "t_n", "m", "s", "lemma7_condition", "s_within_bound"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.t_n.to_string(),
            self.m.to_string(),
            self.s.to_string(),
            self.lemma7_condition.to_string(),
            self.s_within_bound.to_string(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma9Record {
    pub a: i64,
    pub e: i64,
    pub b: i64,
    pub product: i64,
    pub bounded: bool,
    pub exact: bool,
}

impl Lemma9Record {
    pub fn new(a: i64, e: i64, d: &Decomposition) -> Self {
        Lemma9Record {
            a,
            e,
            b: d.b,
            product: d.product,
            bounded: d.bounded,
            exact: d.exact,
        }
    }
}

impl Tabular for Lemma9Record {
    fn columns() -> &'static [&'static str] {
        &["a", "e", "b", "product", "bounded", "exact"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.a.to_string(),
            self.e.to_string(),
            self.b.to_string(),
            self.product.to_string(),
            self.bounded.to_string(),
            self.exact.to_string(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapRecord {
    /// `violation` (a - b >= 2) or `residual` (b = a - 1).
    pub kind: String,
    pub e: i64,
    pub a: i64,
    pub b: i64,
    pub maximal: Option<bool>,
    pub flag: Option<String>,
}

impl Tabular for GapRecord {
    fn columns() -> &'static [&'static str] {
        &["kind", "e", "a", "b", "maximal", "flag"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.kind.clone(),
            self.e.to_string(),
            self.a.to_string(),
            self.b.to_string(),
            opt(&self.maximal),
            opt(&self.flag),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchneiderRecord {
    pub e: u32,
    pub n: u32,
    pub a: i64,
    pub lhs: String,
    pub angle_index: u32,
    pub verdict: String,
    pub precision_bits_used: u32,
}

impl SchneiderRecord {
    pub fn new(e: u32, n: u32, a: i64, c: &TrigComparison) -> Self {
        SchneiderRecord {
            e,
            n,
            a,
            lhs: c.lhs.to_string(),
            angle_index: c.angle_index,
            verdict: ordering_name(c.verdict).to_string(),
            precision_bits_used: c.precision_bits_used,
        }
    }
}

impl Tabular for SchneiderRecord {
    fn columns() -> &'static [&'static str] {
        &[
            "e",
            "n",
            "a",
            "lhs",
            "angle_index",
            "verdict",
            "precision_bits_used",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.e.to_string(),
            self.n.to_string(),
            self.a.to_string(),
            self.lhs.clone(),
            self.angle_index.to_string(),
            self.verdict.clone(),
            self.precision_bits_used.to_string(),
        ]
    }
}
