//! Exact scalars: big integers, rationals, and the 2-adic valuation.
//!
//! `R` below is the localization of the integers at the prime 2, i.e. the
//! rationals with odd denominator, and `2R` is its maximal ideal.

use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision integer.
pub type Integer = BigInt;

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// 2-adic valuation of a rational. `Infinity` is the valuation of zero and
/// compares greater than every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    /// Shift a valuation by an integer; infinity absorbs.
    pub fn shift(self, by: i64) -> Valuation {
        match self {
            Valuation::Finite(v) => Valuation::Finite(v + by),
            Valuation::Infinity => Valuation::Infinity,
        }
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Valuation of a product.
impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

/// Exponent of 2 in a nonzero integer; `Infinity` for zero.
pub fn v2_int(x: &Integer) -> Valuation {
    match x.trailing_zeros() {
        Some(tz) => Valuation::Finite(tz as i64),
        None => Valuation::Infinity,
    }
}

/// 2-adic valuation `v2(numer) - v2(denom)`.
pub fn v2(x: &Rational) -> Valuation {
    match v2_int(x.numer()) {
        Valuation::Infinity => Valuation::Infinity,
        Valuation::Finite(num) => {
            let den = v2_int(x.denom()).finite().unwrap_or(0);
            Valuation::Finite(num - den)
        }
    }
}

/// Membership in `R`: odd denominator.
pub fn in_r(x: &Rational) -> bool {
    v2(x) >= Valuation::Finite(0)
}

/// Membership in `2R`: odd denominator and even numerator (or zero).
pub fn in_2r(x: &Rational) -> bool {
    v2(x) >= Valuation::Finite(1)
}

pub fn factorial(n: u64) -> Integer {
    let mut acc = Integer::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> Integer {
    if k < 0 || k as u64 > n {
        return Integer::zero();
    }
    let k = core::cmp::min(k as u64, n - k as u64);
    let mut acc = Integer::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn int(x: i64) -> Integer {
    Integer::from(x)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

pub fn rat_int(x: Integer) -> Rational {
    Rational::from_integer(x)
}

/// `2^e` as a rational, for any sign of `e`.
pub fn pow2(e: i64) -> Rational {
    let p = Integer::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(Integer::one(), p)
    }
}

/// Floor of the base-2 logarithm of a positive integer.
pub fn ilog2(x: &Integer) -> u64 {
    debug_assert!(x.is_positive());
    x.bits() - 1
}

/// Smallest `r >= 0` with `r * r >= x`.
pub fn ceil_sqrt(x: u64) -> u64 {
    let (mut lo, mut hi) = (0u64, 1u64 << 32);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if mid * mid >= x {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// `ceil(p / q)` for `q > 0`.
pub fn div_ceil(p: i64, q: i64) -> i64 {
    debug_assert!(q > 0);
    p.div_euclid(q) + i64::from(p.rem_euclid(q) != 0)
}

/// Exact conversion for small values, used in diagnostics.
pub fn to_i64(x: &Integer) -> Option<i64> {
    x.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_examples() {
        assert_eq!(v2(&rat(12, 1)), Valuation::Finite(2));
        assert_eq!(v2(&rat(1, 2)), Valuation::Finite(-1));
        assert_eq!(v2(&rat(3, 5)), Valuation::Finite(0));
        assert_eq!(v2(&rat(0, 1)), Valuation::Infinity);
        assert_eq!(v2(&rat(-40, 3)), Valuation::Finite(3));
    }

    #[test]
    fn localization_membership() {
        assert!(in_2r(&rat(6, 5)));
        assert!(!in_r(&rat(1, 2)));
        assert!(in_r(&rat(3, 1)));
        assert!(!in_2r(&rat(3, 1)));
        assert!(in_2r(&rat(0, 1)));
    }

    #[test]
    fn combinatorics() {
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(3, 5), int(0));
        assert_eq!(binomial(3, -1), int(0));
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(factorial(6), int(720));
        assert_eq!(factorial(0), int(1));
        assert_eq!(
            binomial(60, 30),
            "118264581564861424".parse::<Integer>().unwrap()
        );
    }

    #[test]
    fn infinity_is_largest() {
        assert!(Valuation::Infinity > Valuation::Finite(i64::MAX));
        assert_eq!(
            Valuation::Finite(3) + Valuation::Infinity,
            Valuation::Infinity
        );
        assert_eq!(Valuation::Finite(3).shift(-5), Valuation::Finite(-2));
    }

    #[test]
    fn helpers() {
        assert_eq!(pow2(-3), rat(1, 8));
        assert_eq!(pow2(4), rat(16, 1));
        assert_eq!(ceil_sqrt(0), 0);
        assert_eq!(ceil_sqrt(32), 6);
        assert_eq!(ceil_sqrt(36), 6);
        assert_eq!(div_ceil(7, 2), 4);
        assert_eq!(div_ceil(-7, 2), -3);
        assert_eq!(div_ceil(8, 4), 2);
        assert_eq!(ilog2(&int(38)), 5);
    }
}
