//! Arithmetic of the normal-bundle ampleness argument: exact comparison of
//! `a^2` against `4e cos^2(pi/(n-1))`, the resulting minimal dimensions,
//! the `b(a-b) <= e` decompositions and the enumeration that closes the
//! case analysis.
//!
//! `cos^2(pi/k)` is rational only for `k in {1, 2, 3, 4, 6}`; every other
//! comparison against a rational is strict, so shrinking an enclosure until
//! it excludes the query always terminates.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{ceil_sqrt, div_ceil, rat, Integer, Rational};

pub const START_PRECISION_BITS: u32 = 32;
pub const DIMENSION_FLOOR: u32 = 6;

pub const ASSUME_DIMENSION_FLOOR: &str =
    "n >= 6 (geometric input: existence of the section used to build V)";
pub const RESIDUAL_FLAG: &str = "requires geometric input";

/// `a^2 / (4e)` compared with `cos^2(pi/k)`, `k = n - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigComparison {
    pub lhs: Rational,
    pub angle_index: u32,
    pub verdict: Ordering,
    /// Zero on the rational fast path.
    pub precision_bits_used: u32,
}

pub fn ordering_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "LESS",
        Ordering::Equal => "EQUAL",
        Ordering::Greater => "GREATER",
    }
}

impl fmt::Display for TrigComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} vs cos^2(pi/{}): {}",
            self.lhs,
            self.angle_index,
            ordering_name(self.verdict)
        )
    }
}

/// `cos^2(pi/k)` when it is rational.
pub fn rational_cos_squared(k: u32) -> Option<Rational> {
    match k {
        1 => Some(rat(1, 1)),
        2 => Some(rat(0, 1)),
        3 => Some(rat(1, 4)),
        4 => Some(rat(1, 2)),
        6 => Some(rat(3, 4)),
        _ => None,
    }
}

/// Closed interval with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl Enclosure {
    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

fn scale_pow2(bits: u32) -> Integer {
    Integer::one() << bits
}

fn round_down(x: &Rational, bits: u32) -> Rational {
    let s = scale_pow2(bits);
    Rational::new(
        (x * Rational::from_integer(s.clone())).floor().to_integer(),
        s,
    )
}

fn round_up(x: &Rational, bits: u32) -> Rational {
    let s = scale_pow2(bits);
    Rational::new(
        (x * Rational::from_integer(s.clone())).ceil().to_integer(),
        s,
    )
}

/// Partial sums of an alternating series with terms decreasing in absolute
/// value bracket the limit; stop once the next term is below `2^-bits`.
fn alternating_bracket(terms: impl Iterator<Item = Rational>, bits: u32) -> Enclosure {
    let eps = Rational::new(Integer::one(), scale_pow2(bits));
    let mut sum = Rational::zero();
    let mut prev = Rational::zero();
    for (i, t) in terms.enumerate() {
        prev = sum.clone();
        sum += &t;
        if i > 0 && t.abs() < eps {
            break;
        }
    }
    if prev <= sum {
        Enclosure { lo: prev, hi: sum }
    } else {
        Enclosure { lo: sum, hi: prev }
    }
}

/// `atan(1/x)` for an integer `x >= 2`.
fn atan_inv(x: u32, bits: u32) -> Enclosure {
    let x2 = Rational::from_integer(Integer::from(x) * Integer::from(x));
    let first = Rational::new(Integer::one(), Integer::from(x));
    let terms = (0u32..).scan(first, move |pow, k| {
        let mut t = pow.clone() / Rational::from_integer(Integer::from(2 * k + 1));
        if k % 2 == 1 {
            t = -t;
        }
        *pow = &*pow / &x2;
        Some(t)
    });
    alternating_bracket(terms, bits + 4)
}

/// `pi = 16 atan(1/5) - 4 atan(1/239)`, rounded outward to `bits`.
pub fn pi_enclosure(bits: u32) -> Enclosure {
    let a = atan_inv(5, bits + 6);
    let b = atan_inv(239, bits + 6);
    let lo = rat(16, 1) * &a.lo - rat(4, 1) * &b.hi;
    let hi = rat(16, 1) * &a.hi - rat(4, 1) * &b.lo;
    Enclosure {
        lo: round_down(&lo, bits),
        hi: round_up(&hi, bits),
    }
}

/// `cos y` for `0 <= y <= 2`, where the Taylor terms decrease after the
/// first.
fn cos_point(y: &Rational, bits: u32) -> Enclosure {
    debug_assert!(!y.is_negative() && *y <= rat(2, 1));
    let y2 = y * y;
    let terms = (0u32..).scan(Rational::one(), move |term, j| {
        let out = term.clone();
        let k = 2 * j + 1;
        *term = -(&*term * &y2) / Rational::from_integer(Integer::from(k * (k + 1)));
        Some(out)
    });
    alternating_bracket(terms, bits + 4)
}

/// Enclosure of `cos^2(pi/k)` for `k >= 3`.
pub fn cos_squared_enclosure(k: u32, bits: u32) -> Enclosure {
    assert!(
        k >= 3,
        "cos(pi/k) is bounded away from zero only for k >= 3"
    );
    let pi = pi_enclosure(bits + 4);
    let kk = Rational::from_integer(Integer::from(k));
    let x_lo = &pi.lo / &kk;
    let x_hi = &pi.hi / &kk;
    // cos decreases on [0, pi].
    let lo = cos_point(&x_hi, bits + 4).lo.max(Rational::zero());
    let hi = cos_point(&x_lo, bits + 4).hi.min(Rational::one());
    Enclosure {
        lo: round_down(&(&lo * &lo), bits),
        hi: round_up(&(&hi * &hi), bits),
    }
}

/// Three-way comparison of `a^2` with `4e cos^2(pi/(n-1))`.
pub fn compare_schneider(e: u32, n: u32, a: i64) -> TrigComparison {
    assert!(e >= 1 && n >= 3, "need e >= 1 and n >= 3");
    let k = n - 1;
    let lhs = Rational::new(
        Integer::from(a) * Integer::from(a),
        Integer::from(4u64 * u64::from(e)),
    );
    if let Some(c) = rational_cos_squared(k) {
        return TrigComparison {
            verdict: lhs.cmp(&c),
            lhs,
            angle_index: k,
            precision_bits_used: 0,
        };
    }
    let mut bits = START_PRECISION_BITS;
    loop {
        let enc = cos_squared_enclosure(k, bits);
        let verdict = if lhs < enc.lo {
            Some(Ordering::Less)
        } else if lhs > enc.hi {
            Some(Ordering::Greater)
        } else {
            None
        };
        if let Some(verdict) = verdict {
            return TrigComparison {
                lhs,
                angle_index: k,
                verdict,
                precision_bits_used: bits,
            };
        }
        bits *= 2;
    }
}

/// No integer `a` with `a^2 < 4e` satisfies the strict inequality, i.e. the
/// inequality forces `a^2 >= 4e` in dimension `n`.
pub fn schneider_forces_bound(e: u32, n: u32) -> bool {
    let max_a = ceil_sqrt(4 * u64::from(e));
    (0..=max_a as i64)
        .filter(|a| (a * a) < 4 * i64::from(e))
        .all(|a| compare_schneider(e, n, a).verdict != Ordering::Greater)
}

/// Smallest `n >= 3` at which [`schneider_forces_bound`] holds. Finite
/// because `cos^2(pi/(n-1)) -> 1` and `a^2 <= 4e - 1`.
pub fn gap_dimension_for_e(e: u32) -> u32 {
    assert!(e >= 1);
    (3..).find(|&n| schneider_forces_bound(e, n)).unwrap()
}

/// Smallest `n >= 6` at which [`schneider_forces_bound`] holds.
pub fn min_dimension_for_e(e: u32) -> u32 {
    assert!(e >= 1);
    (DIMENSION_FLOOR..)
        .find(|&n| schneider_forces_bound(e, n))
        .unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionRow {
    pub e: u32,
    pub gap_dimension: u32,
    pub min_dimension: u32,
}

pub fn dimension_row(e: u32) -> DimensionRow {
    DimensionRow {
        e,
        gap_dimension: gap_dimension_for_e(e),
        min_dimension: min_dimension_for_e(e),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub b: i64,
    /// `b (a - b)`.
    pub product: i64,
    /// `product <= e`.
    pub bounded: bool,
    /// `product == e`.
    pub exact: bool,
}

/// Every `b` with `ceil(a/2) <= b <= max(a, 0) + e`. For `a >= 0` every `b`
/// past the window has `b(a - b) < -e`; for `a < 0` all products beyond it are
/// negative, so the window still contains `b = 0`.
pub fn lemma9_decompositions(a: i64, e: i64) -> Vec<Decomposition> {
    (div_ceil(a, 2)..=a.max(0) + e)
        .map(|b| {
            let product = b * (a - b);
            Decomposition {
                b,
                product,
                bounded: product <= e,
                exact: product == e,
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GapTriple {
    pub e: i64,
    pub a: i64,
    pub b: i64,
    /// Largest such `b` for this `(e, a)`.
    pub maximal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoStrictGapReport {
    pub e_max: i64,
    /// `(e, a, b)` with `b >= ceil(a/2)`, `a - b >= 2`, `b(a-b) < e <= a^2/4`.
    pub violations: Vec<GapTriple>,
    /// `(a, e)` with `a - 1 < e <= a^2/4`, the `b = a - 1` branch.
    pub residual: Vec<(i64, i64)>,
    pub residual_flag: String,
    /// Search range for `a`: `2 <= a <= e`.
    pub a_bound: String,
    pub assumptions: Vec<String>,
}

impl NoStrictGapReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For `a - b >= 2` and `b >= a/2`, `b(a - b) >= 2b >= a`, so `e > a`
/// bounds the search.
pub fn verify_no_strict_gap(e_max: i64) -> NoStrictGapReport {
    let mut violations = Vec::new();
    let mut residual = Vec::new();
    for e in 1..=e_max {
        for a in 2..=e {
            if 4 * e > a * a {
                continue;
            }
            let found: Vec<i64> = (div_ceil(a, 2)..=a - 2)
                .filter(|b| b * (a - b) < e)
                .collect();
            let top = found.last().copied();
            violations.extend(found.iter().map(|&b| GapTriple {
                e,
                a,
                b,
                maximal: Some(b) == top,
            }));
            if a - 1 < e {
                residual.push((a, e));
            }
        }
    }
    residual.sort();
    NoStrictGapReport {
        e_max,
        violations,
        residual,
        residual_flag: RESIDUAL_FLAG.to_string(),
        a_bound: "2 <= a <= e".to_string(),
        assumptions: alloc::vec![ASSUME_DIMENSION_FLOOR.to_string()],
    }
}
