use std::cmp::Ordering;

use num_traits::ToPrimitive;
use thetacert_core::ampleness::*;

#[test]
fn lemma9_existence() {
    for e in 1..=8i64 {
        for a in -100..=100i64 {
            if a * a < 4 * e {
                continue;
            }
            let d = lemma9_decompositions(a, e);
            assert!(d.iter().any(|x| x.bounded), "a={a} e={e}");
        }
    }
}

#[test]
fn never_equal_off_rational_angles() {
    for n in 3..=40u32 {
        let k = n - 1;
        for e in 1..=8u32 {
            for a in 0..=6i64 {
                let c = compare_schneider(e, n, a);
                if rational_cos_squared(k).is_none() {
                    assert_ne!(c.verdict, Ordering::Equal, "e={e} n={n} a={a}");
                    assert!(c.precision_bits_used > 0);
                }
            }
        }
    }
}

#[test]
fn forced_bound_persists() {
    for e in 1..=8u32 {
        let start = min_dimension_for_e(e);
        for n in start..start + 40 {
            assert!(schneider_forces_bound(e, n), "e={e} n={n}");
        }
        assert!(gap_dimension_for_e(e) <= start);
        if start > DIMENSION_FLOOR {
            assert!(!schneider_forces_bound(e, start - 1));
        }
    }
}

#[test]
fn enclosures_contain_float_value() {
    for k in 3..=60u32 {
        let enc = cos_squared_enclosure(k, 40);
        let c = (std::f64::consts::PI / f64::from(k)).cos().powi(2);
        let lo = enc.lo.to_f64().unwrap();
        let hi = enc.hi.to_f64().unwrap();
        assert!(lo - 1e-12 <= c && c <= hi + 1e-12, "k={k}");
        assert!(hi - lo < 1e-10);
    }
}

#[test]
fn comparisons_agree_with_floats_away_from_ties() {
    for n in 3..=30u32 {
        for e in 1..=12u32 {
            for a in 0..=8i64 {
                let c = compare_schneider(e, n, a);
                let lhs = (a * a) as f64;
                let rhs =
                    4.0 * f64::from(e) * (std::f64::consts::PI / f64::from(n - 1)).cos().powi(2);
                if (lhs - rhs).abs() > 1e-9 {
                    assert_eq!(
                        c.verdict,
                        lhs.partial_cmp(&rhs).unwrap(),
                        "e={e} n={n} a={a}"
                    );
                }
            }
        }
    }
}

#[test]
fn strict_gap_sharpness() {
    assert!(verify_no_strict_gap(8).is_empty());
    for e_max in 1..=8 {
        assert!(verify_no_strict_gap(e_max).is_empty());
    }
    let r9 = verify_no_strict_gap(9);
    assert!(!r9.is_empty());
    assert!(verify_no_strict_gap(8)
        .residual
        .iter()
        .all(|&(a, e)| 4 <= a && a <= e));
}
