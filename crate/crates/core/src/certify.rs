//! Finite differences `Delta^s p_n` and certificates that they are not
//! integers, together with the congruence argument for general `ell`, the
//! parameter choices of the large-dimension bound, and the `s_n` table.
//!
//! Two independent ways to discharge "for every integer `a` and odd `d`":
//!
//! * unique minimal term: one coefficient, free of `a` (and of every
//!   `Lambda_p`, `p > 0`), has strictly smaller 2-adic valuation than all
//!   others and that valuation is negative; then the sum has the same
//!   negative valuation whatever `a` and odd `d` are.
//! * residue enumeration: refine classes `(a mod 2^k, d mod 2^k)`, `d` odd,
//!   until each class is decided. A class is decided once the valuation at
//!   its representative is below what any lift can change (`min v2` of the
//!   non-constant coefficients plus `k`). This covers the same residue pairs
//!   as a flat scan modulo `2^V`, `V = -min v2`, and never splits past `V`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::arith::{
    binomial, factorial, in_2r, in_r, pow2, rat_int, v2, Integer, Rational, Valuation,
};
use crate::chern::pn;
use crate::poly::{IntegralForm, MPoly, Mode, Var};

pub const DEFAULT_STEP: u32 = 3;
pub const DEFAULT_CAP: u64 = 1 << 24;

pub const ASSUME_LAMBDA_INTEGRAL: &str = "Lambda_p in Z";
pub const ASSUME_RESTRICTION: &str =
    "Delta^s' p_n integral for every s <= s' <= n (restriction to deeper sections)";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecError {
    SOutOfRange { n: u32, s: u32 },
    ZeroStep,
    ZeroDimension,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::SOutOfRange { n, s } => write!(f, "need 0 <= s <= n, got n={n} s={s}"),
            SpecError::ZeroStep => f.write_str("step must be positive"),
            SpecError::ZeroDimension => f.write_str("dimension must be positive"),
        }
    }
}

impl core::error::Error for SpecError {}

/// Which finite difference to take: `Delta^s p_n` with `t` stepping by
/// `step` (3 for sections of `|3 Theta|`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DeltaSpec {
    pub n: u32,
    pub s: u32,
    pub step: u32,
    pub mode: Mode,
}

impl DeltaSpec {
    pub fn new(n: u32, s: u32, step: u32, mode: Mode) -> Result<Self, SpecError> {
        if n == 0 {
            return Err(SpecError::ZeroDimension);
        }
        if s > n {
            return Err(SpecError::SOutOfRange { n, s });
        }
        if step == 0 {
            return Err(SpecError::ZeroStep);
        }
        Ok(DeltaSpec { n, s, step, mode })
    }

    pub fn specialized(n: u32, s: u32) -> Result<Self, SpecError> {
        DeltaSpec::new(n, s, DEFAULT_STEP, Mode::Specialized)
    }

    pub fn general(n: u32, s: u32) -> Result<Self, SpecError> {
        DeltaSpec::new(n, s, DEFAULT_STEP, Mode::General)
    }
}

/// `sum_{i=0}^{s} (-1)^i C(s, i) f(t = step * i)`.
pub fn finite_difference(form: &IntegralForm, s: u32, step: u32) -> IntegralForm {
    let mut acc: Option<IntegralForm> = None;
    for i in 0..=s {
        let mut c = rat_int(binomial(u64::from(s), i64::from(i)));
        if i % 2 == 1 {
            c = -c;
        }
        let t = i64::from(step) * i64::from(i);
        let term = form.map(|p| p.evaluate_int(Var::T, t).scale(&c));
        acc = Some(match acc {
            Some(prev) => prev.add(&term),
            None => term,
        });
    }
    acc.expect("s >= 0 gives at least one term")
}

pub fn delta_pn(spec: &DeltaSpec) -> IntegralForm {
    finite_difference(&pn(spec.n, spec.mode), spec.s, spec.step)
}

/// `Delta^s p_n(a theta, d)` for every `s = 0..=n`, sharing one `p_n`.
#[derive(Clone, Debug)]
pub struct DeltaLevels {
    pub n: u32,
    pub step: u32,
    levels: Vec<MPoly>,
    scans: Vec<MinimalTermScan>,
}

impl DeltaLevels {
    pub fn new(n: u32, step: u32) -> Self {
        let base = pn(n, Mode::Specialized);
        let levels = (0..=n)
            .map(|s| finite_difference(&base, s, step).specialize())
            .collect::<Vec<_>>();
        let scans = levels
            .iter()
            .map(|p| scan_minimal_term(&IntegralForm::Specialized(p.clone())))
            .collect();
        DeltaLevels {
            n,
            step,
            levels,
            scans,
        }
    }

    pub fn level(&self, s: u32) -> &MPoly {
        &self.levels[s as usize]
    }

    pub fn scan(&self, s: u32) -> &MinimalTermScan {
        &self.scans[s as usize]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Certified,
    NotCertified,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Certified => "CERTIFIED",
            Verdict::NotCertified => "NOT_CERTIFIED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A monomial of an integral form: `Lambda_p * a^i * d^j` (the `Lambda`
/// factor only in general mode).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub lambda: Option<u32>,
    pub a_exp: u32,
    pub d_exp: u32,
    pub coefficient: Rational,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coefficient)?;
        if let Some(p) = self.lambda {
            write!(f, "*Lambda_{p}")?;
        }
        match self.a_exp {
            0 => {}
            1 => f.write_str("*a")?,
            e => write!(f, "*a^{e}")?,
        }
        match self.d_exp {
            0 => {}
            1 => f.write_str("*d")?,
            e => write!(f, "*d^{e}")?,
        }
        Ok(())
    }
}

/// A residue class on which the difference is 2-integral at every level
/// considered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub a: Integer,
    pub d: Integer,
    /// The class is `(a mod 2^k, d mod 2^k)`.
    pub modulus_exp: u32,
    /// Whether the value at the representative is an integer at every prime.
    pub integer_at_all_primes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    UniqueMinimalTerm {
        /// The `s` whose difference carries the witness.
        level: u32,
        witness: Witness,
        v2: i64,
        runner_up_v2: Option<i64>,
    },
    ResidueEnumeration {
        /// `V`: classes are never refined beyond `2^V`.
        modulus_exp: u32,
        levels: Vec<u32>,
        exhaustive: bool,
        classes: u64,
        counterexample: Option<Counterexample>,
    },
    Congruence {
        nu: i64,
        lambda_terms_even: bool,
        pure_d_sum_odd: bool,
    },
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::UniqueMinimalTerm { .. } => "UNIQUE_MINIMAL_TERM",
            Strategy::ResidueEnumeration { .. } => "RESIDUE_ENUMERATION",
            Strategy::Congruence { .. } => "CONGRUENCE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub spec: DeltaSpec,
    pub verdict: Verdict,
    pub strategy: Strategy,
    pub assumptions: Vec<String>,
    pub detail: String,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    /// `(v2, witness)` when the certificate rests on a unique minimal term.
    pub fn witness(&self) -> Option<(i64, &Witness)> {
        match &self.strategy {
            Strategy::UniqueMinimalTerm { v2, witness, .. } => Some((*v2, witness)),
            _ => None,
        }
    }
}

/// Outcome of the unique-minimal-term scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalTermScan {
    pub min_v2: Valuation,
    pub runner_up_v2: Option<i64>,
    pub witness: Option<Witness>,
    pub unique: bool,
}

impl MinimalTermScan {
    /// Certifies non-integrality on its own.
    pub fn certifies(&self) -> bool {
        match (&self.witness, self.min_v2) {
            (Some(w), Valuation::Finite(v)) => {
                self.unique && v < 0 && w.a_exp == 0 && w.lambda.unwrap_or(0) == 0
            }
            _ => false,
        }
    }

    /// `V = -min v2`, zero when every coefficient lies in `R`.
    pub fn modulus_exp(&self) -> u32 {
        match self.min_v2 {
            Valuation::Finite(v) if v < 0 => (-v) as u32,
            _ => 0,
        }
    }
}

pub fn scan_minimal_term(form: &IntegralForm) -> MinimalTermScan {
    let mut best: Option<(i64, Witness)> = None;
    let mut runner: Option<i64> = None;
    let mut unique = true;
    for (lambda, m, c) in form.coefficients() {
        let v = v2(&c).finite().expect("stored coefficients are nonzero");
        let w = Witness {
            lambda,
            a_exp: u32::from(m.exp(Var::A)),
            d_exp: u32::from(m.exp(Var::D)),
            coefficient: c,
        };
        match &best {
            None => best = Some((v, w)),
            Some((bv, _)) if v < *bv => {
                runner = Some(*bv);
                unique = true;
                best = Some((v, w));
            }
            Some((bv, _)) if v == *bv => {
                unique = false;
                runner = Some(v);
            }
            Some(_) => {
                runner = Some(runner.map_or(v, |r| r.min(v)));
            }
        }
    }
    match best {
        None => MinimalTermScan {
            min_v2: Valuation::Infinity,
            runner_up_v2: None,
            witness: None,
            unique: false,
        },
        Some((v, w)) => MinimalTermScan {
            min_v2: Valuation::Finite(v),
            runner_up_v2: runner,
            witness: Some(w),
            unique,
        },
    }
}

/// Exact value of a polynomial in `a`, `d` at integers.
pub fn evaluate_ad(poly: &MPoly, a: &Integer, d: &Integer) -> Rational {
    let mut den = Integer::one();
    let mut max_a = 0;
    let mut max_d = 0;
    for (m, c) in poly.terms() {
        den = den.lcm(c.denom());
        max_a = max_a.max(u32::from(m.exp(Var::A)));
        max_d = max_d.max(u32::from(m.exp(Var::D)));
    }
    let a_pows = powers(a, max_a);
    let d_pows = powers(d, max_d);
    let mut num = Integer::zero();
    for (m, c) in poly.terms() {
        let scaled = c.numer() * (&den / c.denom());
        num += scaled * &a_pows[m.exp(Var::A) as usize] * &d_pows[m.exp(Var::D) as usize];
    }
    Rational::new(num, den)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ClassStatus {
    NonIntegral,
    Integral,
    Undecided,
}

/// One difference level prepared for fast 2-adic evaluation: integer
/// numerators over a common denominator whose 2-part is `2^den_v2`.
#[derive(Clone, Debug)]
struct ScaledLevel {
    terms: Vec<(u32, u32, Integer)>,
    den_v2: i64,
    nonconst_v2: Valuation,
    modulus_exp: u32,
    max_a: u32,
    max_d: u32,
}

impl ScaledLevel {
    fn new(poly: &MPoly) -> Self {
        let mut lcm = Integer::one();
        let mut nonconst_v2 = Valuation::Infinity;
        let mut min_v2 = Valuation::Infinity;
        for (m, c) in poly.terms() {
            lcm = lcm.lcm(c.denom());
            let v = v2(c);
            min_v2 = min_v2.min(v);
            if !m.is_one() {
                nonconst_v2 = nonconst_v2.min(v);
            }
        }
        let terms: Vec<(u32, u32, Integer)> = poly
            .terms()
            .map(|(m, c)| {
                let num = c.numer() * (&lcm / c.denom());
                (u32::from(m.exp(Var::A)), u32::from(m.exp(Var::D)), num)
            })
            .collect();
        let max_a = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let max_d = terms.iter().map(|t| t.1).max().unwrap_or(0);
        ScaledLevel {
            terms,
            den_v2: lcm.trailing_zeros().unwrap_or(0) as i64,
            nonconst_v2,
            modulus_exp: match min_v2 {
                Valuation::Finite(v) if v < 0 => (-v) as u32,
                _ => 0,
            },
            max_a,
            max_d,
        }
    }

    fn valuation_at(&self, a: &Integer, d: &Integer) -> Valuation {
        let a_pows = powers(a, self.max_a);
        let d_pows = powers(d, self.max_d);
        let mut acc = Integer::zero();
        for (i, j, num) in &self.terms {
            acc += num * &a_pows[*i as usize] * &d_pows[*j as usize];
        }
        match acc.trailing_zeros() {
            Some(tz) => Valuation::Finite(tz as i64 - self.den_v2),
            None => Valuation::Infinity,
        }
    }

    fn status(&self, a: &Integer, d: &Integer, k: u32) -> ClassStatus {
        if self.modulus_exp == 0 {
            return ClassStatus::Integral;
        }
        let val = self.valuation_at(a, d);
        let bound = self.nonconst_v2.shift(i64::from(k));
        let zero = Valuation::Finite(0);
        if val < zero && val < bound {
            ClassStatus::NonIntegral
        } else if val >= zero && bound >= zero {
            ClassStatus::Integral
        } else {
            ClassStatus::Undecided
        }
    }
}

fn powers(x: &Integer, up_to: u32) -> Vec<Integer> {
    let mut out = Vec::with_capacity(up_to as usize + 1);
    out.push(Integer::one());
    for i in 1..=up_to as usize {
        let next = &out[i - 1] * x;
        out.push(next);
    }
    out
}

/// Result of the adaptive residue search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueSearch {
    pub verdict: Verdict,
    pub modulus_exp: u32,
    pub classes: u64,
    pub counterexample: Option<Counterexample>,
}

/// Decide whether, for every integer `a` and odd `d`, at least one of the
/// given polynomials in `(a, d)` has negative 2-adic valuation.
pub fn residue_search(polys: &[&MPoly], cap: u64) -> ResidueSearch {
    let levels: Vec<ScaledLevel> = polys.iter().map(|p| ScaledLevel::new(p)).collect();
    let modulus_exp = levels.iter().map(|l| l.modulus_exp).max().unwrap_or(0);

    let mut stack: Vec<(Integer, Integer, u32)> = vec![
        (Integer::one(), Integer::one(), 1),
        (Integer::zero(), Integer::one(), 1),
    ];
    let mut classes = 0u64;
    while let Some((a, d, k)) = stack.pop() {
        classes += 1;
        if classes > cap {
            return ResidueSearch {
                verdict: Verdict::Inconclusive,
                modulus_exp,
                classes,
                counterexample: None,
            };
        }
        let mut all_integral = true;
        let mut hit = false;
        for level in &levels {
            match level.status(&a, &d, k) {
                ClassStatus::NonIntegral => {
                    hit = true;
                    break;
                }
                ClassStatus::Integral => {}
                ClassStatus::Undecided => all_integral = false,
            }
        }
        if hit {
            continue;
        }
        if all_integral {
            let integer_at_all_primes = polys.iter().all(|p| evaluate_ad(p, &a, &d).is_integer());
            return ResidueSearch {
                verdict: Verdict::NotCertified,
                modulus_exp,
                classes,
                counterexample: Some(Counterexample {
                    a,
                    d,
                    modulus_exp: k,
                    integer_at_all_primes,
                }),
            };
        }
        let step = Integer::one() << k;
        for (x, y) in [(1u8, 1u8), (1, 0), (0, 1), (0, 0)] {
            let na = if x == 1 { &a + &step } else { a.clone() };
            let nd = if y == 1 { &d + &step } else { d.clone() };
            stack.push((na, nd, k + 1));
        }
    }
    ResidueSearch {
        verdict: Verdict::Certified,
        modulus_exp,
        classes,
        counterexample: None,
    }
}

/// Flat scan: every `a mod 2^V` and odd `d mod 2^V`, with `2^V f(a, d)`
/// reduced modulo `2^V` after inverting odd denominators. Returns the first
/// pair where the residue vanishes (i.e. `f` is 2-integral), if any.
///
/// Requires `V >= -min v2` of the coefficients and `V <= 63`.
pub fn residue_scan_flat(poly: &MPoly, modulus_exp: u32) -> Option<(u64, u64)> {
    assert!(modulus_exp <= 63, "flat scan works modulo at most 2^63");
    if modulus_exp == 0 {
        return Some((0, 1));
    }
    let mask: u64 = (1u64 << modulus_exp) - 1;
    let scale = pow2(i64::from(modulus_exp));
    let terms: Vec<(u32, u32, u64)> = poly
        .terms()
        .map(|(m, c)| {
            let scaled = c * &scale;
            assert!(in_r(&scaled), "modulus too small for coefficient {c}");
            let num = residue_mod_pow2(scaled.numer(), modulus_exp);
            let den = residue_mod_pow2(scaled.denom(), modulus_exp);
            let r = num.wrapping_mul(inverse_odd(den)) & mask;
            (u32::from(m.exp(Var::A)), u32::from(m.exp(Var::D)), r)
        })
        .collect();
    for a in 0..=mask {
        for d in (1..=mask).step_by(2) {
            let mut acc = 0u64;
            for (i, j, c) in &terms {
                let term = c
                    .wrapping_mul(wrapping_pow(a, *i))
                    .wrapping_mul(wrapping_pow(d, *j));
                acc = acc.wrapping_add(term);
            }
            if acc & mask == 0 {
                return Some((a, d));
            }
        }
    }
    None
}

fn residue_mod_pow2(x: &Integer, e: u32) -> u64 {
    let m = Integer::one() << e;
    let r = x.mod_floor(&m);
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

/// Inverse of an odd number modulo `2^64` by Newton iteration.
fn inverse_odd(x: u64) -> u64 {
    debug_assert!(x & 1 == 1);
    let mut inv = x;
    for _ in 0..6 {
        inv = inv.wrapping_mul(2u64.wrapping_sub(x.wrapping_mul(inv)));
    }
    inv
}

fn wrapping_pow(x: u64, e: u32) -> u64 {
    let mut acc = 1u64;
    for _ in 0..e {
        acc = acc.wrapping_mul(x);
    }
    acc
}

fn minimal_term_strategy(level: u32, scan: &MinimalTermScan) -> Strategy {
    Strategy::UniqueMinimalTerm {
        level,
        witness: scan
            .witness
            .clone()
            .expect("certifying scans carry a witness"),
        v2: scan.min_v2.finite().expect("certifying scans are finite"),
        runner_up_v2: scan.runner_up_v2,
    }
}

/// Certify that `Delta^s p_n` is not an integer for every integer `a` (or
/// integer `Lambda_p`) and every odd `d`.
pub fn certify_nonintegral(spec: &DeltaSpec, cap: u64) -> Certificate {
    certify_form(spec, &delta_pn(spec), cap)
}

/// [`certify_nonintegral`] for one level of a precomputed [`DeltaLevels`].
pub fn certify_level(levels: &DeltaLevels, s: u32, cap: u64) -> Certificate {
    let spec = DeltaSpec::new(levels.n, s, levels.step, Mode::Specialized).expect("s <= n");
    certify_form(
        &spec,
        &IntegralForm::Specialized(levels.level(s).clone()),
        cap,
    )
}

fn certify_form(spec: &DeltaSpec, form: &IntegralForm, cap: u64) -> Certificate {
    let mut assumptions = Vec::new();
    if spec.mode == Mode::General {
        assumptions.push(ASSUME_LAMBDA_INTEGRAL.to_string());
    }
    let scan = scan_minimal_term(form);

    if scan.certifies() {
        let strategy = minimal_term_strategy(spec.s, &scan);
        let detail = format!(
            "unique minimal 2-adic term {} with v2 = {}, next smallest v2 = {}",
            scan.witness.as_ref().unwrap(),
            scan.min_v2,
            scan.runner_up_v2
                .map_or("none".to_string(), |v| v.to_string()),
        );
        return Certificate {
            spec: *spec,
            verdict: Verdict::Certified,
            strategy,
            assumptions,
            detail,
        };
    }

    if scan.modulus_exp() == 0 {
        // Every coefficient lies in R, so every value does.
        let counterexample = match form {
            IntegralForm::Specialized(p) => Some(Counterexample {
                a: Integer::zero(),
                d: Integer::one(),
                modulus_exp: 0,
                integer_at_all_primes: evaluate_ad(p, &Integer::zero(), &Integer::one())
                    .is_integer(),
            }),
            IntegralForm::General { .. } => None,
        };
        return Certificate {
            spec: *spec,
            verdict: Verdict::NotCertified,
            strategy: Strategy::ResidueEnumeration {
                modulus_exp: 0,
                levels: vec![spec.s],
                exhaustive: true,
                classes: 0,
                counterexample,
            },
            assumptions,
            detail: "every coefficient lies in R; the value is 2-integral everywhere".to_string(),
        };
    }

    match form {
        IntegralForm::General { .. } => Certificate {
            spec: *spec,
            verdict: Verdict::Inconclusive,
            strategy: Strategy::ResidueEnumeration {
                modulus_exp: scan.modulus_exp(),
                levels: vec![spec.s],
                exhaustive: false,
                classes: 0,
                counterexample: None,
            },
            assumptions,
            detail: "no unique minimal term; residues over the Lambda_p are not enumerated"
                .to_string(),
        },
        IntegralForm::Specialized(poly) => {
            let search = residue_search(&[poly], cap);
            residue_certificate(*spec, vec![spec.s], search, assumptions)
        }
    }
}

fn residue_certificate(
    spec: DeltaSpec,
    levels: Vec<u32>,
    search: ResidueSearch,
    assumptions: Vec<String>,
) -> Certificate {
    let detail = match (&search.verdict, &search.counterexample) {
        (Verdict::Certified, _) => format!(
            "every class (a, odd d) mod 2^k with k <= {} is non-integral at some level ({} classes)",
            search.modulus_exp, search.classes
        ),
        (Verdict::NotCertified, Some(c)) => format!(
            "2-integral on the class a = {} mod 2^{}, d = {} mod 2^{}; integer at all primes there: {}",
            c.a, c.modulus_exp, c.d, c.modulus_exp, c.integer_at_all_primes
        ),
        _ => format!("class budget exhausted after {} classes", search.classes),
    };
    Certificate {
        spec,
        verdict: search.verdict,
        strategy: Strategy::ResidueEnumeration {
            modulus_exp: search.modulus_exp,
            levels,
            exhaustive: search.verdict != Verdict::Inconclusive,
            classes: search.classes,
            counterexample: search.counterexample,
        },
        assumptions,
        detail,
    }
}

/// Certify that no rank-2 bundle with `c1 = a theta`, `c2 = d theta_2`
/// (`d` odd) lives on a complete intersection of `s` members of `|3 Theta|`:
/// such a bundle restricts to every deeper intersection, so it suffices that
/// for each `(a, d)` some `Delta^{s'} p_n`, `s <= s' <= n`, is not an integer.
pub fn certify_no_bundle(levels: &DeltaLevels, s: u32, cap: u64) -> Certificate {
    let n = levels.n;
    let spec = DeltaSpec::new(n, s, levels.step, Mode::Specialized).expect("s <= n");
    let assumptions = vec![ASSUME_RESTRICTION.to_string()];

    for level in s..=n {
        let scan = levels.scan(level);
        if scan.certifies() {
            let detail = format!(
                "level s' = {level}: unique minimal 2-adic term {} with v2 = {}",
                scan.witness.as_ref().unwrap(),
                scan.min_v2
            );
            return Certificate {
                spec,
                verdict: Verdict::Certified,
                strategy: minimal_term_strategy(level, scan),
                assumptions,
                detail,
            };
        }
    }

    let polys: Vec<&MPoly> = (s..=n).map(|l| levels.level(l)).collect();
    let search = residue_search(&polys, cap);
    residue_certificate(spec, (s..=n).collect(), search, assumptions)
}

/// `6m - 4 <= 2^(2m - s)`, the exact form of `s <= 2m - log2(6m - 4)`.
pub fn lemma7_condition(m: i64, s: i64) -> bool {
    let lhs = rat_int(Integer::from(6 * m - 4));
    lhs <= pow2(2 * m - s)
}

/// One admissible `s` for a given `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma7Row {
    pub m: u32,
    pub s: u32,
    pub n: u32,
    pub certificate: Certificate,
    /// `v2((4m+s)!/(4m)!) - 2m + 1`.
    pub expected_v2: i64,
    /// The witness is `d^(2m)` (i.e. `h = 4m+s`, `j = 2m`) with the expected
    /// valuation.
    pub witness_matches: bool,
}

impl Lemma7Row {
    pub fn passes(&self) -> bool {
        self.certificate.is_certified() && self.witness_matches && self.expected_v2 < 0
    }
}

pub fn lemma7_check(m: u32, cap: u64) -> Vec<Lemma7Row> {
    assert!(m >= 1, "lemma7_check needs m >= 1");
    let mut rows = Vec::new();
    for s in 0..=2 * m {
        if !lemma7_condition(i64::from(m), i64::from(s)) {
            continue;
        }
        let n = 4 * m + s;
        let spec = DeltaSpec::specialized(n, s).expect("s <= n");
        let certificate = certify_nonintegral(&spec, cap);
        let ratio = Rational::new(factorial(u64::from(n)), factorial(u64::from(4 * m)));
        let expected_v2 = v2(&ratio).finite().unwrap() - 2 * i64::from(m) + 1;
        let witness_matches = match certificate.witness() {
            Some((v, w)) => {
                v == expected_v2 && w.a_exp == 0 && w.d_exp == 2 * m && w.lambda.is_none()
            }
            None => false,
        };
        rows.push(Lemma7Row {
            m,
            s,
            n,
            certificate,
            expected_v2,
            witness_matches,
        });
    }
    rows
}

/// General-`ell` congruence: with `s' = n - 4[n/4]`, find the least `nu`
/// making `2^nu Delta^{s'} p_n` 2-integral, then require the `Lambda_p`
/// (`p > 0`) coefficients to be even and the `Lambda_0` (pure `d`)
/// coefficients to sum to an odd number. Then for odd `d` and integer
/// `Lambda`, `2^nu Delta^{s'} p_n` is odd, i.e. congruent to `d` mod `2R`.
pub fn theorem5_congruence(n: u32) -> Certificate {
    assert!(n >= 4, "the congruence is stated for n >= 4");
    let s_prime = n - 4 * (n / 4);
    let spec = DeltaSpec::general(n, s_prime).expect("s' <= n");
    let form = delta_pn(&spec);
    let scan = scan_minimal_term(&form);
    let nu = match scan.min_v2 {
        Valuation::Finite(v) => -v,
        Valuation::Infinity => 0,
    };
    let scaled = form.scale(&pow2(nu));

    let IntegralForm::General { lambda, .. } = &scaled else {
        unreachable!("general spec")
    };
    let lambda_terms_even = lambda
        .iter()
        .filter(|(p, _)| **p > 0)
        .all(|(_, poly)| poly.terms().all(|(_, c)| in_2r(c)));
    let pure = lambda.get(&0).cloned().unwrap_or_else(|| MPoly::zero(n));
    let pure_sum: Rational = pure.terms().map(|(_, c)| c.clone()).sum();
    let pure_d_sum_odd = in_r(&pure_sum) && !in_2r(&pure_sum);

    let certified = nu > 0 && lambda_terms_even && pure_d_sum_odd;
    let unscaled_pure = pure.scale(&pow2(-nu));
    let detail = format!(
        "s' = {s_prime}, nu = {nu}; pure-d part {unscaled_pure}; Lambda_p (p>0) terms even after scaling: {lambda_terms_even}; pure-d coefficient sum odd: {pure_d_sum_odd}"
    );
    Certificate {
        spec,
        verdict: if certified {
            Verdict::Certified
        } else {
            Verdict::NotCertified
        },
        strategy: Strategy::Congruence {
            nu,
            lambda_terms_even,
            pure_d_sum_odd,
        },
        assumptions: vec![
            ASSUME_LAMBDA_INTEGRAL.to_string(),
            ASSUME_RESTRICTION.to_string(),
        ],
        detail,
    }
}

/// Parameters of the large-dimension argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Theorem6Params {
    pub n: u32,
    /// `ceil(n/3 - 2 log2 n)`.
    pub t_n: i64,
    /// `floor((n - t_n) / 4)`.
    pub m: i64,
    /// `n - 4m`.
    pub s: i64,
    /// `6m - 4 <= 2^(2m - s)`.
    pub lemma7_condition: bool,
    /// `s <= n - 6`.
    pub s_within_bound: bool,
}

impl Theorem6Params {
    pub fn holds(&self) -> bool {
        self.lemma7_condition && self.s_within_bound
    }
}

/// `n^6 >= 2^(n - 3t)`, i.e. `t >= n/3 - 2 log2 n`.
fn t_admissible(n: u32, t: i64) -> bool {
    let lhs = rat_int(Integer::from(n).pow(6u32));
    lhs >= pow2(i64::from(n) - 3 * t)
}

pub fn theorem6_params(n: u32) -> Theorem6Params {
    assert!(n >= 1);
    // ceil(n/3) always satisfies the inequality; walk down to the least t.
    let mut t = (i64::from(n) + 2).div_euclid(3);
    while t_admissible(n, t - 1) {
        t -= 1;
    }
    let m = (i64::from(n) - t).div_euclid(4);
    let s = i64::from(n) - 4 * m;
    Theorem6Params {
        n,
        t_n: t,
        m,
        s,
        lemma7_condition: m > 0 && lemma7_condition(m, s),
        s_within_bound: s <= i64::from(n) - 6,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    Match,
    Stronger,
    Weaker,
}

impl Comparison {
    pub fn name(self) -> &'static str {
        match self {
            Comparison::Match => "MATCH",
            Comparison::Stronger => "STRONGER",
            Comparison::Weaker => "WEAKER",
        }
    }

    pub fn of(computed: Option<u32>, reference: u32) -> Comparison {
        match computed {
            Some(c) if c == reference => Comparison::Match,
            Some(c) if c > reference => Comparison::Stronger,
            _ => Comparison::Weaker,
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Certified lower bounds on the dimension of the singular locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnBound {
    pub n: u32,
    /// Largest `s <= n - 6` with [`certify_no_bundle`] certified.
    pub computed: Option<u32>,
    /// Largest `s <= n - 6` with [`certify_nonintegral`] certified at `s`
    /// alone.
    pub single_level: Option<u32>,
    /// Some certificate along the way ran out of budget.
    pub inconclusive: bool,
}

pub fn sn_bound(n: u32, step: u32, cap: u64) -> SnBound {
    assert!(n >= 6, "s ranges over 0..=n-6");
    let levels = DeltaLevels::new(n, step);
    let top = n - 6;
    let mut inconclusive = false;

    let mut computed = None;
    for s in (0..=top).rev() {
        let c = certify_no_bundle(&levels, s, cap);
        match c.verdict {
            Verdict::Certified => {
                computed = Some(s);
                break;
            }
            Verdict::Inconclusive => inconclusive = true,
            Verdict::NotCertified => {}
        }
    }

    let mut single_level = None;
    for s in (0..=top).rev() {
        let c = certify_level(&levels, s, cap);
        match c.verdict {
            Verdict::Certified => {
                single_level = Some(s);
                break;
            }
            Verdict::Inconclusive => inconclusive = true,
            Verdict::NotCertified => {}
        }
    }

    SnBound {
        n,
        computed,
        single_level,
        inconclusive,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnTableRow {
    pub n: u32,
    pub computed_sn: Option<u32>,
    pub single_level_sn: Option<u32>,
    pub reference_sn: u32,
    pub verdict: Comparison,
    pub inconclusive: bool,
}

impl SnTableRow {
    pub fn new(bound: &SnBound, reference_sn: u32) -> Self {
        SnTableRow {
            n: bound.n,
            computed_sn: bound.computed,
            single_level_sn: bound.single_level,
            reference_sn,
            verdict: Comparison::of(bound.computed, reference_sn),
            inconclusive: bound.inconclusive,
        }
    }
}

/// Rows for every `n` in `n_min..=n_max` that has a reference value.
pub fn compute_sn_table(
    n_min: u32,
    n_max: u32,
    reference: &[(u32, u32)],
    step: u32,
    cap: u64,
) -> Vec<SnTableRow> {
    assert!(n_min >= 7, "the table starts at n = 7");
    (n_min..=n_max)
        .filter_map(|n| {
            let reference_value = reference.iter().find(|(k, _)| *k == n)?.1;
            Some(SnTableRow::new(&sn_bound(n, step, cap), reference_value))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::poly::Monomial;

    fn spec_poly(n: u32, s: u32) -> MPoly {
        delta_pn(&DeltaSpec::specialized(n, s).unwrap()).specialize()
    }

    #[test]
    fn spec_validation() {
        assert_eq!(
            DeltaSpec::specialized(3, 4),
            Err(SpecError::SOutOfRange { n: 3, s: 4 })
        );
        assert_eq!(
            DeltaSpec::new(3, 1, 0, Mode::General),
            Err(SpecError::ZeroStep)
        );
        assert_eq!(DeltaSpec::specialized(0, 0), Err(SpecError::ZeroDimension));
    }

    #[test]
    fn delta_zero_is_pn_at_zero() {
        let base = match pn(5, Mode::Specialized) {
            IntegralForm::Specialized(p) => p,
            _ => unreachable!(),
        };
        assert_eq!(spec_poly(5, 0), base.evaluate_int(Var::T, 0));
    }

    #[test]
    fn delta_n2_s1() {
        // (a^2 - d) - (a^2 - 6a + 18 - d)
        let expect = MPoly::from_terms(
            2,
            [
                (Monomial::var(Var::A, 1), rat(6, 1)),
                (Monomial::ONE, rat(-18, 1)),
            ],
        );
        assert_eq!(spec_poly(2, 1), expect);
    }

    #[test]
    fn n4_certified_by_d_squared_over_two() {
        let c = certify_nonintegral(&DeltaSpec::specialized(4, 0).unwrap(), DEFAULT_CAP);
        assert_eq!(c.verdict, Verdict::Certified);
        let (v, w) = c.witness().unwrap();
        assert_eq!(v, -1);
        assert_eq!((w.a_exp, w.d_exp), (0, 2));
        assert_eq!(w.coefficient, rat(1, 2));
    }

    #[test]
    fn n2_is_integral() {
        let c = certify_nonintegral(&DeltaSpec::specialized(2, 0).unwrap(), DEFAULT_CAP);
        assert_eq!(c.verdict, Verdict::NotCertified);
        match c.strategy {
            Strategy::ResidueEnumeration {
                counterexample: Some(ce),
                ..
            } => {
                assert!(ce.integer_at_all_primes)
            }
            other => panic!("unexpected strategy {other:?}"),
        }
    }

    #[test]
    fn n7_single_level_needs_residues() {
        // s = 1 is certified only by enumeration; s = 0 is integral on a class.
        let one = certify_nonintegral(&DeltaSpec::specialized(7, 1).unwrap(), DEFAULT_CAP);
        assert_eq!(one.verdict, Verdict::Certified);
        assert_eq!(one.strategy.name(), "RESIDUE_ENUMERATION");
        let zero = certify_nonintegral(&DeltaSpec::specialized(7, 0).unwrap(), DEFAULT_CAP);
        assert_eq!(zero.verdict, Verdict::NotCertified);
    }

    #[test]
    fn cap_yields_inconclusive() {
        let c = certify_nonintegral(&DeltaSpec::specialized(7, 1).unwrap(), 1);
        assert_eq!(c.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn flat_scan_agrees_on_small_cases() {
        for n in 4..=12 {
            for s in 0..=3.min(n) {
                let p = spec_poly(n, s);
                let scan = scan_minimal_term(&IntegralForm::Specialized(p.clone()));
                let v = scan.modulus_exp();
                if v == 0 || v > 8 {
                    continue;
                }
                let flat = residue_scan_flat(&p, v).is_none();
                let adaptive = residue_search(&[&p], DEFAULT_CAP).verdict == Verdict::Certified;
                assert_eq!(flat, adaptive, "n={n} s={s}");
            }
        }
    }

    #[test]
    fn lemma7_m1() {
        let rows = lemma7_check(1, DEFAULT_CAP);
        assert_eq!(rows.iter().map(|r| r.s).collect::<Vec<_>>(), vec![0, 1]);
        assert!(rows.iter().all(Lemma7Row::passes));
        assert_eq!(rows[0].expected_v2, -1);
    }

    #[test]
    fn theorem5_small() {
        let c4 = theorem5_congruence(4);
        assert!(c4.is_certified());
        assert_eq!(
            c4.strategy,
            Strategy::Congruence {
                nu: 1,
                lambda_terms_even: true,
                pure_d_sum_odd: true
            }
        );
        assert!(c4.detail.contains("(1/2)*d^2"));
        assert!(!theorem5_congruence(6).is_certified());
        assert!(!theorem5_congruence(7).is_certified());
    }

    #[test]
    fn theorem6_examples() {
        let p30 = theorem6_params(30);
        assert_eq!((p30.t_n, p30.m, p30.s), (1, 7, 2));
        assert!(p30.holds());
        let p36 = theorem6_params(36);
        assert_eq!((p36.t_n, p36.m, p36.s), (2, 8, 4));
        // For n < 30 the offset is non-positive.
        assert!(theorem6_params(29).t_n <= 0);
    }

    #[test]
    fn lemma7_condition_exact() {
        assert!(lemma7_condition(1, 1));
        assert!(!lemma7_condition(1, 2));
        assert!(lemma7_condition(7, 2)); // 38 <= 4096
        assert!(!lemma7_condition(2, 2)); // 8 > 4
    }

    #[test]
    fn comparison() {
        assert_eq!(Comparison::of(Some(2), 2), Comparison::Match);
        assert_eq!(Comparison::of(Some(3), 2), Comparison::Stronger);
        assert_eq!(Comparison::of(Some(1), 2), Comparison::Weaker);
        assert_eq!(Comparison::of(None, 0), Comparison::Weaker);
    }

    #[test]
    fn sn_bound_small() {
        let b = sn_bound(7, DEFAULT_STEP, DEFAULT_CAP);
        assert_eq!(b.computed, Some(1));
        assert_eq!(b.single_level, Some(1));
        let b12 = sn_bound(12, DEFAULT_STEP, DEFAULT_CAP);
        assert_eq!(b12.computed, Some(2));
        assert_eq!(b12.single_level, Some(0));
    }
}
