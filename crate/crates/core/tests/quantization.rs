use proptest::prelude::*;

use stripq_core::quantization::{
    build_quantum_curve, check_annihilation, classical_factorization, closed_form_psi, dual_wave, frobenius_solve,
    verify_dual_difference, QOperator,
};
use stripq_core::{Basepoint, Direction, MultiPoly, QLaurent, Rat, StripGeometry, Var, XSeries};

fn arb_op() -> impl Strategy<Value = QOperator> {
    prop::collection::vec((0u32..3, -2i64..3, -2i64..3, -3i64..4, any::<bool>()), 1..4).prop_map(|ts| {
        let mut op = QOperator::zero();
        for (a, b, k, c, param) in ts {
            let mut coeff = QLaurent::t_pow(k).scale(&Rat::int(c));
            if param {
                coeff = coeff.scale_poly(&MultiPoly::var(Var::Alpha(0)));
            }
            op = op.add(&QOperator::term(a, b, coeff));
        }
        op
    })
}

fn arb_psi(direction: Direction) -> impl Strategy<Value = XSeries> {
    prop::collection::vec(prop::collection::vec((-3i64..4, -2i64..3), 0..3), 5).prop_map(move |cs| {
        let coeffs = cs
            .into_iter()
            .map(|ts| QLaurent::from_terms(ts.into_iter().map(|(k, c)| (k, MultiPoly::constant(Rat::int(c)))), None))
            .collect();
        XSeries::new(direction, coeffs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reassociation_is_invisible(a in arb_op(), b in arb_op(), c in arb_op(), psi in arb_psi(Direction::AscendingX)) {
        let left = a.mul(&b).mul(&c);
        let right = a.mul(&b.mul(&c));
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left.apply(&psi).unwrap(), right.apply(&psi).unwrap());
    }

    #[test]
    fn product_acts_as_composition(a in arb_op(), b in arb_op(), psi in arb_psi(Direction::AscendingX)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let ab = a.mul(&b);
        prop_assume!(ab.x_range().map(|r| r.0) == Some(a.x_range().unwrap().0 + b.x_range().unwrap().0));
        prop_assert_eq!(ab.apply(&psi).unwrap(), a.apply(&b.apply(&psi).unwrap()).unwrap());
    }

    #[test]
    fn composition_in_inverse_direction(a in arb_op(), b in arb_op(), psi in arb_psi(Direction::AscendingXInverse)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let ab = a.mul(&b);
        prop_assume!(ab.x_range().map(|r| r.1) == Some(a.x_range().unwrap().1 + b.x_range().unwrap().1));
        prop_assert_eq!(ab.apply(&psi).unwrap(), a.apply(&b.apply(&psi).unwrap()).unwrap());
    }
}

#[test]
fn annihilation_across_small_matrix() {
    for (r, s) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        for f in -2..=2 {
            let g = StripGeometry::symbolic(r, s, f);
            for bp in [Basepoint::Infinity, Basepoint::One] {
                if bp == Basepoint::One && f < -1 {
                    continue;
                }
                let op = build_quantum_curve(&g, bp);
                let psi = closed_form_psi(&g, bp, 6, 14).unwrap();
                assert!(check_annihilation(&op, &psi).unwrap().passed(), "{} {bp}", g.label());
                assert_eq!(frobenius_solve(&op, psi.direction, 6, 14).unwrap(), psi, "{} {bp}", g.label());
            }
        }
    }
}

#[test]
fn wrong_curve_does_not_annihilate() {
    let g = StripGeometry::c3(1);
    let psi = closed_form_psi(&g, Basepoint::Infinity, 6, 14).unwrap();
    let other = build_quantum_curve(&StripGeometry::c3(2), Basepoint::Infinity);
    assert!(!check_annihilation(&other, &psi).unwrap().passed());
}

#[test]
fn basepoint_one_limit_divisible_by_y_minus_one() {
    for (r, s) in [(0, 0), (2, 1), (1, 2)] {
        for f in -1..=2 {
            let g = StripGeometry::symbolic(r, s, f);
            let fac = classical_factorization(&g, Basepoint::One).unwrap();
            assert!(fac.unit == Rat::ONE || fac.unit == Rat::int(-1), "{}", g.label());
        }
    }
}

#[test]
fn dual_difference_small_matrix() {
    for (r, s) in [(0, 0), (1, 1), (2, 0)] {
        for f in -2..=2 {
            let g = StripGeometry::symbolic(r, s, f);
            assert!(verify_dual_difference(&dual_wave(&g), 6, 10).unwrap().passed(), "{}", g.label());
        }
    }
}
