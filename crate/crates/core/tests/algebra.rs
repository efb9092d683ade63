use num_traits::Zero;
use proptest::prelude::*;
use thetacert_core::arith::{binomial, factorial, int, rat, v2, Rational, Valuation};
use thetacert_core::poly::{integrate, IntegralForm, MPoly, Mode, Monomial, Var};

const DIM: u32 = 4;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=8).prop_map(|(n, d)| rat(n, d))
}

fn monomial() -> impl Strategy<Value = Monomial> {
    (0u16..=2, 0u16..=2, 0u16..=2, 0u16..=2, 0u16..=2)
        .prop_map(|(l, th, a, d, t)| Monomial::new(l, th, a, d, t))
}

fn poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((monomial(), small_rat()), 0..6)
        .prop_map(|terms| MPoly::from_terms(DIM, terms))
}

/// Homogeneous class of degree `n` in `ell`, `theta` with coefficients in `a, d, t`.
fn top_class(n: u32) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((0..=n as u16, 0u16..=2, 0u16..=2, small_rat()), 1..6).prop_map(
        move |terms| {
            MPoly::from_terms(
                n,
                terms
                    .into_iter()
                    .map(|(l, d, t, c)| (Monomial::new(l, n as u16 - l, 0, d, t), c)),
            )
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &MPoly::one(DIM), p.clone());
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(-(-p.clone()), p);
    }

    #[test]
    fn products_respect_dimension(p in poly(), q in poly()) {
        let prod = &p * &q;
        prop_assert!(prod.terms().all(|(m, _)| m.cohomological_degree() <= DIM));
    }

    #[test]
    fn valuation_laws(x in small_rat(), y in small_rat()) {
        prop_assert_eq!(v2(&(&x * &y)), v2(&x) + v2(&y));
        prop_assert!(v2(&(&x + &y)) >= v2(&x).min(v2(&y)));
        if v2(&x) != v2(&y) {
            prop_assert_eq!(v2(&(&x + &y)), v2(&x).min(v2(&y)));
        }
    }

    #[test]
    fn binomial_identities(n in 0u64..40, k in 0i64..40) {
        prop_assert_eq!(binomial(n + 1, k + 1), binomial(n, k) + binomial(n, k + 1));
        if k as u64 <= n {
            prop_assert_eq!(
                binomial(n, k) * factorial(k as u64) * factorial(n - k as u64),
                factorial(n)
            );
        }
    }

    #[test]
    fn integration_modes_agree(class in (1u32..=8).prop_flat_map(top_class)) {
        let general = integrate(&class, Mode::General).specialize();
        let specialized = match integrate(&class, Mode::Specialized) {
            IntegralForm::Specialized(p) => p,
            _ => unreachable!(),
        };
        prop_assert_eq!(general, specialized);
    }
}

#[test]
fn valuation_of_zero() {
    assert_eq!(v2(&Rational::zero()), Valuation::Infinity);
    assert_eq!(v2(&Rational::from_integer(int(96))), Valuation::Finite(5));
}

#[test]
fn lower_degree_terms_vanish() {
    let p = MPoly::var(3, Var::Theta).pow(2);
    assert!(integrate(&p, Mode::Specialized).is_zero());
    assert!(integrate(&p, Mode::General).is_zero());
}
