//! Sparse polynomials over the rationals in the cohomology generators
//! `ell`, `theta` and the scalar parameters `a`, `d`, `t`.
//!
//! The ambient dimension `n` bounds the cohomological degree
//! `e_ell + e_theta` of every stored term; multiplication drops anything
//! above it, since such classes vanish on an `n`-dimensional variety.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{binomial, factorial, rat_int, Integer, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Ell = 0,
    Theta = 1,
    A = 2,
    D = 3,
    T = 4,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::Ell, Var::Theta, Var::A, Var::D, Var::T];

    pub fn name(self) -> &'static str {
        match self {
            Var::Ell => "ell",
            Var::Theta => "theta",
            Var::A => "a",
            Var::D => "d",
            Var::T => "t",
        }
    }
}

/// Exponent vector `(e_ell, e_theta, e_a, e_d, e_t)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial([u16; 5]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 5]);

    pub fn new(ell: u16, theta: u16, a: u16, d: u16, t: u16) -> Self {
        Monomial([ell, theta, a, d, t])
    }

    pub fn var(v: Var, e: u16) -> Self {
        Monomial::ONE.with(v, e)
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v as usize]
    }

    pub fn with(mut self, v: Var, e: u16) -> Self {
        self.0[v as usize] = e;
        self
    }

    /// Degree in the cohomology generators `ell` and `theta`.
    pub fn cohomological_degree(&self) -> u32 {
        u32::from(self.0[0]) + u32::from(self.0[1])
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 5]
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; 5];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.0[i] + other.0[i];
        }
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(v.name())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyError {
    DimensionMismatch { left: u32, right: u32 },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DimensionMismatch { left, right } => {
                write!(f, "ambient dimension mismatch: {left} vs {right}")
            }
        }
    }
}

impl core::error::Error for PolyError {}

/// Sparse polynomial with rational coefficients and a truncation bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    dim: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero(dim: u32) -> Self {
        MPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: u32) -> Self {
        MPoly::constant(dim, Rational::one())
    }

    pub fn constant(dim: u32, c: Rational) -> Self {
        MPoly::term(dim, Monomial::ONE, c)
    }

    pub fn var(dim: u32, v: Var) -> Self {
        MPoly::term(dim, Monomial::var(v, 1), Rational::one())
    }

    /// Single term `c * m`; dropped if zero or above the truncation bound.
    pub fn term(dim: u32, m: Monomial, c: Rational) -> Self {
        let mut p = MPoly::zero(dim);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(dim: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = MPoly::zero(dim);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Accumulate `c * m` in place, keeping the no-zero and truncation
    /// invariants.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() || m.cohomological_degree() > self.dim {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_dim(&self, other: &MPoly) -> Result<(), PolyError> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(PolyError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        Ok(out)
    }

    /// Product with terms of cohomological degree above `dim` discarded.
    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check_dim(other)?;
        let mut out = MPoly::zero(self.dim);
        for (m1, c1) in &self.terms {
            let d1 = m1.cohomological_degree();
            for (m2, c2) in &other.terms {
                if d1 + m2.cohomological_degree() > self.dim {
                    continue;
                }
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.dim);
        }
        MPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one(self.dim);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Largest exponent of `v` among the terms (0 for the zero polynomial).
    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|m| u32::from(m.exp(v)))
            .max()
            .unwrap_or(0)
    }

    /// Terms whose cohomological degree is exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> MPoly {
        MPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.cohomological_degree() == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self, k: u32) -> bool {
        self.terms.keys().all(|m| m.cohomological_degree() == k)
    }

    /// Specialize `ell = a * theta`: `ell^e` becomes `a^e * theta^e`.
    pub fn substitute_ell(&self) -> MPoly {
        let mut out = MPoly::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.exp(Var::Ell);
            let moved = m
                .with(Var::Ell, 0)
                .with(Var::Theta, m.exp(Var::Theta) + e)
                .with(Var::A, m.exp(Var::A) + e);
            out.add_term(moved, c.clone());
        }
        out
    }

    /// Replace the variable `v` by the rational constant `value`.
    pub fn evaluate(&self, v: Var, value: &Rational) -> MPoly {
        let mut out = MPoly::zero(self.dim);
        let mut powers: Vec<Rational> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            while powers.len() <= e {
                let next = match powers.last() {
                    Some(last) => last * value,
                    None => Rational::one(),
                };
                powers.push(next);
            }
            out.add_term(m.with(v, 0), c * &powers[e]);
        }
        out
    }

    /// Replace `v` by an integer; convenience over [`MPoly::evaluate`].
    pub fn evaluate_int(&self, v: Var, value: i64) -> MPoly {
        self.evaluate(v, &rat_int(Integer::from(value)))
    }

    /// Value when the polynomial is a constant, if it is.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// Re-home the terms into a different ambient dimension, truncating.
    pub fn with_dim(&self, dim: u32) -> MPoly {
        MPoly::from_terms(dim, self.terms.iter().map(|(m, c)| (*m, c.clone())))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                match self.$checked(rhs) {
                    Ok(p) => p,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

/// How the first Chern class `ell` is treated when integrating.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// `ell = a * theta`; integrals are polynomials in `a`, `d`, `t`.
    Specialized,
    /// `ell` arbitrary; integrals are linear forms in the formal integers
    /// `Lambda_p = int ell_p theta_{n-p}`.
    General,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Specialized => "specialized",
            Mode::General => "general",
        }
    }
}

/// Result of integrating a class over the `n`-dimensional variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegralForm {
    /// Polynomial in `a`, `d`, `t`.
    Specialized(MPoly),
    /// `p -> coefficient of Lambda_p`, each a polynomial in `d`, `t`.
    General {
        dim: u32,
        lambda: BTreeMap<u32, MPoly>,
    },
}

impl IntegralForm {
    pub fn mode(&self) -> Mode {
        match self {
            IntegralForm::Specialized(_) => Mode::Specialized,
            IntegralForm::General { .. } => Mode::General,
        }
    }

    pub fn dim(&self) -> u32 {
        match self {
            IntegralForm::Specialized(p) => p.dim(),
            IntegralForm::General { dim, .. } => *dim,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            IntegralForm::Specialized(p) => p.is_zero(),
            IntegralForm::General { lambda, .. } => lambda.values().all(MPoly::is_zero),
        }
    }

    /// Apply `Lambda_p -> a^p * C(n, p)`; identity on specialized forms.
    pub fn specialize(&self) -> MPoly {
        match self {
            IntegralForm::Specialized(p) => p.clone(),
            IntegralForm::General { dim, lambda } => {
                let mut out = MPoly::zero(*dim);
                for (p, coeff) in lambda {
                    let factor = rat_int(binomial(u64::from(*dim), i64::from(*p)));
                    let a_pow = MPoly::term(*dim, Monomial::var(Var::A, *p as u16), factor);
                    out = &out + &(coeff * &a_pow);
                }
                out
            }
        }
    }

    /// Apply `f` to every underlying polynomial.
    pub fn map(&self, f: impl Fn(&MPoly) -> MPoly) -> IntegralForm {
        match self {
            IntegralForm::Specialized(p) => IntegralForm::Specialized(f(p)),
            IntegralForm::General { dim, lambda } => IntegralForm::General {
                dim: *dim,
                lambda: lambda
                    .iter()
                    .map(|(p, c)| (*p, f(c)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
            },
        }
    }

    pub fn add(&self, other: &IntegralForm) -> IntegralForm {
        match (self, other) {
            (IntegralForm::Specialized(p), IntegralForm::Specialized(q)) => {
                IntegralForm::Specialized(p + q)
            }
            (
                IntegralForm::General { dim, lambda },
                IntegralForm::General {
                    dim: dim2,
                    lambda: lambda2,
                },
            ) => {
                assert_eq!(dim, dim2, "integral forms over different dimensions");
                let mut out = lambda.clone();
                for (p, c) in lambda2 {
                    let merged = match out.get(p) {
                        Some(prev) => prev + c,
                        None => c.clone(),
                    };
                    if merged.is_zero() {
                        out.remove(p);
                    } else {
                        out.insert(*p, merged);
                    }
                }
                IntegralForm::General {
                    dim: *dim,
                    lambda: out,
                }
            }
            _ => panic!("cannot add integral forms of different modes"),
        }
    }

    pub fn scale(&self, c: &Rational) -> IntegralForm {
        self.map(|p| p.scale(c))
    }

    /// Every coefficient together with a description of its monomial:
    /// `(lambda index or None, monomial in a/d/t, coefficient)`.
    pub fn coefficients(&self) -> Vec<(Option<u32>, Monomial, Rational)> {
        match self {
            IntegralForm::Specialized(p) => p.terms().map(|(m, c)| (None, *m, c.clone())).collect(),
            IntegralForm::General { lambda, .. } => lambda
                .iter()
                .flat_map(|(p, poly)| poly.terms().map(move |(m, c)| (Some(*p), *m, c.clone())))
                .collect(),
        }
    }

    /// Largest `t` exponent across the form.
    pub fn degree_in(&self, v: Var) -> u32 {
        match self {
            IntegralForm::Specialized(p) => p.degree_in(v),
            IntegralForm::General { lambda, .. } => {
                lambda.values().map(|c| c.degree_in(v)).max().unwrap_or(0)
            }
        }
    }
}

impl fmt::Display for IntegralForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegralForm::Specialized(p) => write!(f, "{p}"),
            IntegralForm::General { lambda, .. } => {
                if lambda.is_empty() {
                    return f.write_str("0");
                }
                for (i, (p, c)) in lambda.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "Lambda_{p}*({c})")?;
                }
                Ok(())
            }
        }
    }
}

/// Integrate over the principally polarized variety of dimension `dim`.
///
/// Only terms of cohomological degree exactly `dim` contribute. In
/// specialized mode `theta^n` integrates to `n!`; in general mode
/// `ell^p theta^(n-p)` integrates to `p! (n-p)! Lambda_p`.
pub fn integrate(p: &MPoly, mode: Mode) -> IntegralForm {
    let n = p.dim();
    match mode {
        Mode::Specialized => {
            let q = p.substitute_ell();
            let top = rat_int(factorial(u64::from(n)));
            let mut out = MPoly::zero(n);
            for (m, c) in q.terms() {
                if m.cohomological_degree() == n {
                    out.add_term(m.with(Var::Theta, 0), c * &top);
                }
            }
            IntegralForm::Specialized(out)
        }
        Mode::General => {
            let mut lambda: BTreeMap<u32, MPoly> = BTreeMap::new();
            for (m, c) in p.terms() {
                if m.cohomological_degree() != n {
                    continue;
                }
                let e = u32::from(m.exp(Var::Ell));
                let weight = factorial(u64::from(e)) * factorial(u64::from(n - e));
                let entry = lambda.entry(e).or_insert_with(|| MPoly::zero(n));
                entry.add_term(m.with(Var::Ell, 0).with(Var::Theta, 0), c * rat_int(weight));
            }
            lambda.retain(|_, c| !c.is_zero());
            IntegralForm::General { dim: n, lambda }
        }
    }
}
