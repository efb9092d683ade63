//! Rank-2 Chern characters, line-bundle twists and the integrals
//! `p_n(ell, d, t)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::arith::{
    binomial, div_ceil, factorial, in_2r, pow2, rat, rat_int, v2, Rational, Valuation,
};
use crate::poly::{integrate, IntegralForm, MPoly, Mode, Monomial, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChernError {
    /// A class was not homogeneous of the expected cohomological degree.
    NotHomogeneous {
        expected: u32,
    },
    DimensionMismatch,
    /// Asked for Chern character terms above the ambient dimension.
    DegreeTooLarge {
        requested: u32,
        dim: u32,
    },
}

impl fmt::Display for ChernError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChernError::NotHomogeneous { expected } => {
                write!(f, "class is not homogeneous of degree {expected}")
            }
            ChernError::DimensionMismatch => f.write_str("classes live in different dimensions"),
            ChernError::DegreeTooLarge { requested, dim } => {
                write!(f, "degree {requested} exceeds ambient dimension {dim}")
            }
        }
    }
}

impl core::error::Error for ChernError {}

/// Chern classes `(c1, c2)` of a rank-2 bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernPair {
    c1: MPoly,
    c2: MPoly,
}

impl ChernPair {
    pub fn new(c1: MPoly, c2: MPoly) -> Result<Self, ChernError> {
        if c1.dim() != c2.dim() {
            return Err(ChernError::DimensionMismatch);
        }
        if !c1.is_homogeneous(1) {
            return Err(ChernError::NotHomogeneous { expected: 1 });
        }
        if !c2.is_homogeneous(2) {
            return Err(ChernError::NotHomogeneous { expected: 2 });
        }
        Ok(ChernPair { c1, c2 })
    }

    /// `c1 = ell`, `c2 = d * theta^2 / 2`.
    pub fn test_bundle(n: u32) -> Self {
        let c1 = MPoly::var(n, Var::Ell);
        let c2 = MPoly::term(n, Monomial::new(0, 2, 0, 1, 0), rat(1, 2));
        ChernPair { c1, c2 }
    }

    pub fn c1(&self) -> &MPoly {
        &self.c1
    }

    pub fn c2(&self) -> &MPoly {
        &self.c2
    }

    pub fn dim(&self) -> u32 {
        self.c1.dim()
    }

    /// `[ch_0, ..., ch_up_to]` with `ch_k = s_k / k!`, where the power sums
    /// of the formal roots follow `s_k = c1 s_{k-1} - c2 s_{k-2}`.
    pub fn chern_character(&self, up_to: u32) -> Result<Vec<MPoly>, ChernError> {
        let n = self.dim();
        if up_to > n {
            return Err(ChernError::DegreeTooLarge {
                requested: up_to,
                dim: n,
            });
        }
        let mut sums: Vec<MPoly> = Vec::with_capacity(up_to as usize + 1);
        sums.push(MPoly::constant(n, rat(2, 1)));
        if up_to >= 1 {
            sums.push(self.c1.clone());
        }
        for k in 2..=up_to as usize {
            let next = &(&self.c1 * &sums[k - 1]) - &(&self.c2 * &sums[k - 2]);
            sums.push(next);
        }
        Ok(sums
            .into_iter()
            .enumerate()
            .map(|(k, s)| s.scale(&Rational::new(One::one(), factorial(k as u64))))
            .collect())
    }

    /// Tensor with a line bundle of first Chern class `u`:
    /// `(c1 + 2u, c2 + c1 u + u^2)`.
    pub fn twist(&self, u: &MPoly) -> Result<ChernPair, ChernError> {
        if u.dim() != self.dim() {
            return Err(ChernError::DimensionMismatch);
        }
        if !u.is_homogeneous(1) {
            return Err(ChernError::NotHomogeneous { expected: 1 });
        }
        let c1 = &self.c1 + &u.scale(&rat(2, 1));
        let c2 = &(&self.c2 + &(&self.c1 * u)) + &(u * u);
        Ok(ChernPair { c1, c2 })
    }
}

/// Truncated exponential `e^u = sum u^k / k!` of a degree-one class.
pub fn exponential(u: &MPoly) -> MPoly {
    let n = u.dim();
    let mut out = MPoly::one(n);
    let mut power = MPoly::one(n);
    for k in 1..=n {
        power = &power * u;
        out = &out + &power.scale(&Rational::new(One::one(), factorial(u64::from(k))));
    }
    out
}

/// `int ch_n` of the test bundle `(ell, d theta_2)` twisted by `-t theta`.
///
/// The result is a polynomial in `a, d, t` (specialized, `ell = a theta`) or a
/// linear form in the `Lambda_p` with coefficients in `d, t` (general).
pub fn pn(n: u32, mode: Mode) -> IntegralForm {
    assert!(n >= 1, "p_n needs n >= 1");
    let minus_t_theta = MPoly::term(n, Monomial::new(0, 1, 0, 0, 1), rat(-1, 1));
    let twisted = ChernPair::test_bundle(n)
        .twist(&minus_t_theta)
        .expect("-t*theta is a degree-one class");
    let ch = twisted
        .chern_character(n)
        .expect("n is the ambient dimension");
    integrate(&ch[n as usize], mode)
}

/// Extracted coefficients of the closed-form expansion of `p_n(ell, d, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula1Report {
    pub n: u32,
    /// `(j, n - h) -> rho`.
    pub rho: BTreeMap<(u32, u32), Rational>,
    pub all_pass: bool,
    /// `(j, n - h, rho)` for every membership claim that fails.
    pub failures: Vec<(u32, u32, Rational)>,
    /// Computed monomials that do not correspond to any `(h, j)` slot.
    pub structural: Vec<(u32, Monomial, Rational)>,
}

impl Formula1Report {
    /// Minimum 2-adic valuation of `rho_{j,k}` over `j`, for each `k = n - h > 0`.
    pub fn min_valuation_by_codegree(&self) -> BTreeMap<u32, Valuation> {
        let mut out: BTreeMap<u32, Valuation> = BTreeMap::new();
        for ((_, k), r) in &self.rho {
            if *k == 0 {
                continue;
            }
            let v = v2(r);
            let slot = out.entry(*k).or_insert(Valuation::Infinity);
            if v < *slot {
                *slot = v;
            }
        }
        out
    }
}

/// The normalizing factor `(-1)^(h-j) 2^(-ceil((n-h)/2) - j + 1) C(h, 2j)`.
pub fn formula1_factor(n: u32, h: u32, j: u32) -> Rational {
    let sign = if (h - j).is_multiple_of(2) { 1 } else { -1 };
    let exp = -div_ceil(i64::from(n - h), 2) - i64::from(j) + 1;
    pow2(exp) * rat_int(binomial(u64::from(h), i64::from(2 * j))) * rat(sign, 1)
}

/// Divide each coefficient of `t^(h-2j) d^j Lambda_{n-h}` in `p_n` by the
/// normalizing factor and check: `rho` in `2R` when `n - h > 0`, `rho = 1`
/// when `h = n`.
pub fn verify_formula1(n: u32) -> Formula1Report {
    let IntegralForm::General { lambda, .. } = pn(n, Mode::General) else {
        unreachable!("general mode yields a general form")
    };

    let mut rho = BTreeMap::new();
    let mut failures = Vec::new();
    let mut structural = Vec::new();
    let mut claimed: BTreeMap<(u32, Monomial), ()> = BTreeMap::new();

    for h in 0..=n {
        let k = n - h;
        for j in 0..=h / 2 {
            let m = Monomial::new(0, 0, 0, j as u16, (h - 2 * j) as u16);
            claimed.insert((k, m), ());
            let coeff = lambda
                .get(&k)
                .map(|c| c.coeff(&m))
                .unwrap_or_else(Rational::zero);
            let value = coeff / formula1_factor(n, h, j);
            let ok = if k == 0 {
                value.is_one()
            } else {
                in_2r(&value)
            };
            if !ok {
                failures.push((j, k, value.clone()));
            }
            rho.insert((j, k), value);
        }
    }

    for (k, poly) in &lambda {
        for (m, c) in poly.terms() {
            if !claimed.contains_key(&(*k, *m)) {
                structural.push((*k, *m, c.clone()));
            }
        }
    }

    Formula1Report {
        n,
        all_pass: failures.is_empty() && structural.is_empty(),
        rho,
        failures,
        structural,
    }
}
