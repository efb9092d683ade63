//! Command-line front end: argument parsing, dispatch to `thetacert-core`,
//! comparison against the shipped reference tables, and report emission.

pub mod baseline;
pub mod format;
pub mod report;

use std::fmt;
use std::str::FromStr;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use thetacert_core::ampleness::{
    compare_schneider, dimension_row, lemma9_decompositions, verify_no_strict_gap,
};
use thetacert_core::arith::{in_2r, rat, v2};
use thetacert_core::certify::{
    certify_no_bundle, certify_nonintegral, delta_pn, lemma7_check, scan_minimal_term, sn_bound,
    theorem5_congruence, theorem6_params, DeltaLevels, DeltaSpec, SnTableRow, DEFAULT_CAP,
    DEFAULT_STEP,
};
use thetacert_core::chern::verify_formula1;
use thetacert_core::poly::Mode;

use crate::baseline::Baseline;
use crate::format::{render, Format};
use crate::report::*;

#[derive(Debug, Parser)]
#[command(
    name = "thetacert",
    version,
    about = "Exact integrality certificates and ampleness arithmetic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RangeArg {
    pub lo: u32,
    pub hi: u32,
}

impl RangeArg {
    pub fn iter(self) -> std::ops::RangeInclusive<u32> {
        self.lo..=self.hi
    }
}

impl FromStr for RangeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s
            .split_once("..=")
            .or_else(|| s.split_once(".."))
            .ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
        let lo: u32 = lo
            .trim()
            .parse()
            .map_err(|e| format!("bad lower bound: {e}"))?;
        let hi: u32 = hi
            .trim()
            .parse()
            .map_err(|e| format!("bad upper bound: {e}"))?;
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(RangeArg { lo, hi })
    }
}

impl fmt::Display for RangeArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Specialized,
    General,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Specialized => Mode::Specialized,
            ModeArg::General => Mode::General,
        }
    }
}

#[derive(Debug, Args)]
pub struct DeltaArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub s: u32,
    #[arg(long, value_enum, default_value_t = ModeArg::Specialized)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_STEP)]
    pub step: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalized coefficients of p_n against the closed-form expansion.
    VerifyFormula1 {
        #[arg(long, conflicts_with = "range")]
        n: Option<u32>,
        #[arg(long, default_value = "1..30")]
        range: RangeArg,
    },
    /// Print Delta^s p_n.
    Delta(DeltaArgs),
    /// Certify that Delta^s p_n is never an integer.
    Certify {
        #[command(flatten)]
        delta: DeltaArgs,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Certify that some Delta^s' p_n, s <= s' <= n, is non-integral everywhere.
    NoBundle {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: u32,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Singular-locus bounds s_n against the reference table.
    TableSn {
        #[arg(long, default_value = "7..30")]
        range: RangeArg,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: u32,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Minimal dimensions per class multiple e against the reference table.
    TableDim {
        #[arg(long, default_value = "1..8")]
        range: RangeArg,
    },
    /// Witness certificates for n = 4m + s.
    Lemma7 {
        #[arg(long, conflicts_with = "range")]
        m: Option<u32>,
        #[arg(long, default_value = "1..8")]
        range: RangeArg,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Congruence certificate for general ell.
    Theorem5 {
        #[arg(long, conflicts_with = "range")]
        n: Option<u32>,
        #[arg(long, default_value = "4..30")]
        range: RangeArg,
    },
    /// Parameters t_n, m, s of the large-dimension argument.
    Theorem6Params {
        #[arg(long, conflicts_with = "range")]
        n: Option<u32>,
        #[arg(long, default_value = "30..200")]
        range: RangeArg,
    },
    /// Three-way comparison of a^2 with 4e cos^2(pi/(n-1)).
    Schneider {
        #[arg(long)]
        e: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// Integers b >= a/2 with b(a-b) <= e.
    Lemma9 {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long)]
        e: i64,
    },
    /// Triples (e, a, b) with a - b >= 2 and b(a-b) < e <= a^2/4, e <= E.
    NoStrictGap {
        #[arg(long, default_value_t = 8)]
        e: i64,
    },
}

/// Parameter problems found after parsing; the binary exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()).into())
}

/// Rendered output and whether every attached expectation held.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub status: Status,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Failed => 1,
        }
    }
}

fn emit<T: Serialize + Tabular>(
    command: &str,
    ok: bool,
    rows: Vec<T>,
    notes: Vec<String>,
    format: Format,
) -> Result<Outcome> {
    let status = if ok { Status::Ok } else { Status::Failed };
    let report = Report {
        command: command.to_string(),
        status,
        rows,
        notes,
    };
    Ok(Outcome {
        output: render(&report, format)?,
        status,
    })
}

fn spec(args: &DeltaArgs) -> Result<DeltaSpec> {
    match DeltaSpec::new(args.n, args.s, args.step, args.mode.into()) {
        Ok(s) => Ok(s),
        Err(e) => usage(e.to_string()),
    }
}

fn single_or_range(n: Option<u32>, range: RangeArg) -> RangeArg {
    n.map_or(range, |n| RangeArg { lo: n, hi: n })
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let format = cli.format;
    match &cli.command {
        Command::VerifyFormula1 { n, range } => {
            let range = single_or_range(*n, *range);
            if range.lo == 0 {
                return usage("n must be at least 1");
            }
            let reports: Vec<_> = range
                .iter()
                .collect::<Vec<_>>()
                .par_iter()
                .map(|&n| verify_formula1(n))
                .collect();
            let mut rows = Vec::new();
            let mut notes = Vec::new();
            for r in &reports {
                for ((j, k), rho) in &r.rho {
                    let pass = if *k == 0 {
                        *rho == rat(1, 1)
                    } else {
                        in_2r(rho)
                    };
                    rows.push(Formula1Record {
                        n: r.n,
                        h: r.n - k,
                        j: *j,
                        n_minus_h: *k,
                        rho: rho.to_string(),
                        v2: v2(rho).to_string(),
                        pass,
                    });
                }
                let mins: Vec<String> = r
                    .min_valuation_by_codegree()
                    .iter()
                    .map(|(k, v)| format!("{k}:{v}"))
                    .collect();
                notes.push(format!(
                    "n={}: {} failing, {} unmatched monomials; min v2 by n-h [{}]",
                    r.n,
                    r.failures.len(),
                    r.structural.len(),
                    mins.join(" ")
                ));
            }
            let ok = reports.iter().all(|r| r.all_pass);
            emit("verify-formula1", ok, rows, notes, format)
        }
        Command::Delta(args) => {
            let spec = spec(args)?;
            let form = delta_pn(&spec);
            let scan = scan_minimal_term(&form);
            let row = DeltaRecord {
                n: spec.n,
                s: spec.s,
                step: spec.step,
                mode: spec.mode.name().to_string(),
                terms: form.coefficients().len(),
                min_v2: scan.min_v2.to_string(),
                form: form.to_string(),
            };
            emit("delta", true, vec![row], vec![], format)
        }
        Command::Certify { delta, cap } => {
            let spec = spec(delta)?;
            let c = certify_nonintegral(&spec, *cap);
            emit(
                "certify",
                true,
                vec![CertificateRecord::from(&c)],
                vec![],
                format,
            )
        }
        Command::NoBundle { n, s, step, cap } => {
            if let Err(e) = DeltaSpec::new(*n, *s, *step, Mode::Specialized) {
                return usage(e.to_string());
            }
            let levels = DeltaLevels::new(*n, *step);
            let c = certify_no_bundle(&levels, *s, *cap);
            emit(
                "no-bundle",
                true,
                vec![CertificateRecord::from(&c)],
                vec![],
                format,
            )
        }
        Command::TableSn { range, step, cap } => {
            if range.lo < 7 || range.hi > 30 {
                return usage(format!("table-sn covers 7..30, got {range}"));
            }
            if *step == 0 {
                return usage("step must be positive");
            }
            let baseline = Baseline::embedded()?;
            let ns: Vec<u32> = range.iter().collect();
            let rows: Vec<SnRecord> = ns
                .par_iter()
                .map(|&n| {
                    let reference_value = baseline.sn(n).expect("validated baseline covers 7..30");
                    SnRecord::from(&SnTableRow::new(&sn_bound(n, *step, *cap), reference_value))
                })
                .collect();
            let ok = !rows.iter().any(SnRecord::is_weaker);
            let notes = vec![
                "computed_sn: largest s <= n-6 such that for all a and odd d some Delta^s' p_n, s <= s' <= n, is non-integral".to_string(),
                "single_level_sn: largest s <= n-6 with Delta^s p_n itself non-integral for all a and odd d".to_string(),
                format!("assumption: {}", thetacert_core::certify::ASSUME_RESTRICTION),
            ];
            emit("table-sn", ok, rows, notes, format)
        }
        Command::TableDim { range } => {
            if range.lo < 1 || range.hi > 8 {
                return usage(format!("table-dim covers 1..8, got {range}"));
            }
            let baseline = Baseline::embedded()?;
            let es: Vec<u32> = range.iter().collect();
            let rows: Vec<DimRecord> = es
                .par_iter()
                .map(|&e| DimRecord::new(&dimension_row(e), baseline.min_dimension(e).unwrap()))
                .collect();
            let ok = rows.iter().all(DimRecord::matches);
            let notes = vec![format!(
                "assumption: {}",
                thetacert_core::ampleness::ASSUME_DIMENSION_FLOOR
            )];
            emit("table-dim", ok, rows, notes, format)
        }
        Command::Lemma7 { m, range, cap } => {
            let range = single_or_range(*m, *range);
            if range.lo == 0 {
                return usage("m must be at least 1");
            }
            let ms: Vec<u32> = range.iter().collect();
            let rows: Vec<Lemma7Record> = ms
                .par_iter()
                .flat_map_iter(|&m| lemma7_check(m, *cap))
                .map(|r| Lemma7Record::from(&r))
                .collect();
            let ok = rows
                .iter()
                .all(|r| r.verdict == "CERTIFIED" && r.witness_matches && r.expected_v2 < 0);
            emit("lemma7", ok, rows, vec![], format)
        }
        Command::Theorem5 { n, range } => {
            let range = single_or_range(*n, *range);
            if range.lo < 4 {
                return usage("theorem5 needs n >= 4");
            }
            let ns: Vec<u32> = range.iter().collect();
            let certs: Vec<_> = ns.par_iter().map(|&n| theorem5_congruence(n)).collect();
            let ok = certs.iter().all(|c| {
                let expected = !matches!(c.spec.n, 6 | 7);
                c.is_certified() == expected
            });
            let rows = certs.iter().map(CertificateRecord::from).collect();
            let notes = vec!["expected: CERTIFIED with nu > 0 except n = 6, 7".to_string()];
            emit("theorem5", ok, rows, notes, format)
        }
        Command::Theorem6Params { n, range } => {
            let range = single_or_range(*n, *range);
            if range.lo == 0 {
                return usage("n must be at least 1");
            }
            let params: Vec<_> = range.iter().map(theorem6_params).collect();
            let ok = params.iter().filter(|p| p.n >= 30).all(|p| p.holds());
            let rows = params.iter().map(Theorem6Record::from).collect();
            emit("theorem6-params", ok, rows, vec![], format)
        }
        Command::Schneider { e, n, a } => {
            if *e == 0 || *n < 3 {
                return usage("need e >= 1 and n >= 3");
            }
            let c = compare_schneider(*e, *n, *a);
            emit(
                "schneider",
                true,
                vec![SchneiderRecord::new(*e, *n, *a, &c)],
                vec![],
                format,
            )
        }
        Command::Lemma9 { a, e } => {
            if *e < 0 || a.unsigned_abs() > 1 << 20 || *e > 1 << 20 {
                return usage("need 0 <= e and |a|, e <= 2^20");
            }
            let rows = lemma9_decompositions(*a, *e)
                .iter()
                .map(|d| Lemma9Record::new(*a, *e, d))
                .collect();
            emit("lemma9", true, rows, vec![], format)
        }
        Command::NoStrictGap { e } => {
            if *e < 1 || *e > 10_000 {
                return usage("need 1 <= e <= 10000");
            }
            let report = verify_no_strict_gap(*e);
            let mut rows: Vec<GapRecord> = report
                .violations
                .iter()
                .map(|g| GapRecord {
                    kind: "violation".into(),
                    e: g.e,
                    a: g.a,
                    b: g.b,
                    maximal: Some(g.maximal),
                    flag: None,
                })
                .collect();
            rows.extend(report.residual.iter().map(|&(a, e)| GapRecord {
                kind: "residual".into(),
                e,
                a,
                b: a - 1,
                maximal: None,
                flag: Some(report.residual_flag.clone()),
            }));
            // Emptiness is only claimed up to e = 8.
            let ok = *e > 8 || report.is_empty();
            let mut notes = vec![format!("search range {}", report.a_bound)];
            notes.extend(
                report
                    .assumptions
                    .iter()
                    .map(|a| format!("assumption: {a}")),
            );
            notes.push(format!(
                "{} violations, {} residual pairs",
                report.violations.len(),
                report.residual.len()
            ));
            emit("no-strict-gap", ok, rows, notes, format)
        }
    }
}
