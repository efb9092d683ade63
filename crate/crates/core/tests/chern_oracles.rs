use num_traits::Zero;
use proptest::prelude::*;
use thetacert_core::arith::{rat, rat_int, Integer, Rational};
use thetacert_core::chern::{exponential, pn, ChernPair};
use thetacert_core::poly::{integrate, IntegralForm, MPoly, Mode, Monomial, Var};

fn theta_multiple(n: u32, k: i64) -> MPoly {
    MPoly::term(n, Monomial::var(Var::Theta, 1), rat(k, 1))
}

/// `E = L^p + L^q` with `c1(L) = theta`: `int ch_n = p^n + q^n`.
#[test]
fn split_bundle_oracle() {
    for n in 1..=12u32 {
        for p in 1..=4i64 {
            for q in 1..=4i64 {
                let c1 = theta_multiple(n, p + q);
                let c2 = MPoly::term(n, Monomial::var(Var::Theta, 2), rat(p * q, 1));
                let pair = ChernPair::new(c1, c2).unwrap();
                let ch = pair.chern_character(n).unwrap();
                let value = integrate(&ch[n as usize], Mode::Specialized)
                    .specialize()
                    .as_constant()
                    .unwrap();
                let expect = rat_int(Integer::from(p).pow(n) + Integer::from(q).pow(n));
                assert_eq!(value, expect, "n={n} p={p} q={q}");
            }
        }
    }
}

fn total(ch: &[MPoly]) -> MPoly {
    ch.iter().fold(MPoly::zero(ch[0].dim()), |acc, c| &acc + c)
}

fn degree_one(n: u32, x: i64, y: i64) -> MPoly {
    &theta_multiple(n, x) + &MPoly::term(n, Monomial::var(Var::Ell, 1), rat(y, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// `ch(E (x) L) = ch(E) e^{c1(L)}`.
    #[test]
    fn twist_matches_exponential(
        n in 1u32..=6,
        c1 in (-3i64..=3, -3i64..=3),
        c2 in (-3i64..=3, -3i64..=3, 1i64..=4),
        u in (-3i64..=3, -3i64..=3),
    ) {
        let c2_poly = &MPoly::term(n, Monomial::var(Var::Theta, 2), rat(c2.0, c2.2))
            + &MPoly::term(n, Monomial::new(1, 1, 0, 1, 0), rat(c2.1, 1));
        let pair = ChernPair::new(degree_one(n, c1.0, c1.1), c2_poly).unwrap();
        let u = degree_one(n, u.0, u.1);
        let twisted = total(&pair.twist(&u).unwrap().chern_character(n).unwrap());
        let product = &total(&pair.chern_character(n).unwrap()) * &exponential(&u);
        prop_assert_eq!(twisted, product);
    }
}

#[test]
fn pn_degree_bounds() {
    for n in 1..=16u32 {
        for mode in [Mode::Specialized, Mode::General] {
            let form = pn(n, mode);
            assert!(form.degree_in(Var::T) <= n);
            assert!(form.degree_in(Var::D) <= n / 2);
        }
    }
}

/// `p_n` at `t = 0` against the closed form from the formal roots
/// `a/2 +- sqrt(a^2/4 - d/2)` in `theta`: `n! * int ch_n = sum over even 2i of
/// 2 C(n, 2i) (a/2)^{n-2i} (a^2/4 - d/2)^i`.
#[test]
fn pn_closed_form() {
    for n in 1..=14u32 {
        let form = pn(n, Mode::Specialized)
            .specialize()
            .evaluate_int(Var::T, 0);
        for a in -3i64..=3 {
            for d in [-3i64, -1, 1, 5] {
                let got = thetacert_core::certify::evaluate_ad(&form, &a.into(), &d.into());
                let half_a = rat(a, 2);
                let disc = &half_a * &half_a - rat(d, 2);
                let mut expect = Rational::zero();
                for i in 0..=n / 2 {
                    let c = rat_int(thetacert_core::arith::binomial(
                        u64::from(n),
                        i64::from(2 * i),
                    ));
                    expect += rat(2, 1) * c * pow(&half_a, n - 2 * i) * pow(&disc, i);
                }
                assert_eq!(got, expect, "n={n} a={a} d={d}");
            }
        }
    }
}

fn pow(x: &Rational, e: u32) -> Rational {
    (0..e).fold(rat(1, 1), |acc, _| acc * x)
}

#[test]
fn general_form_specializes() {
    for n in 1..=10 {
        assert_eq!(
            pn(n, Mode::General).specialize(),
            pn(n, Mode::Specialized).specialize()
        );
        assert!(matches!(pn(n, Mode::General), IntegralForm::General { .. }));
    }
}
