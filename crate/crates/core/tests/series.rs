use proptest::prelude::*;

use stripq_core::series::pochhammer::poch_product_x;
use stripq_core::series::{inv_qq, poch_finite, TMono};
use stripq_core::{Direction, Monomial, MultiPoly, QLaurent, Rat, Var, XSeries};

const TRUNC: i64 = 12;

fn arb_poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((0u16..3, 0u16..2, -4i64..5), 0..3).prop_map(|ts| {
        let mut p = MultiPoly::zero();
        for (a, b, c) in ts {
            let m = Monomial::var_pow(Var::Alpha(0), a).mul(&Monomial::var_pow(Var::Beta(0), b));
            p.add_term(m, &Rat::int(c));
        }
        p
    })
}

fn arb_ql() -> impl Strategy<Value = QLaurent> {
    prop::collection::vec((-3i64..8, arb_poly()), 0..5).prop_map(|ts| QLaurent::from_terms(ts, Some(TRUNC)))
}

fn same(a: &QLaurent, b: &QLaurent) -> bool {
    let k = a.trunc().unwrap_or(TRUNC).min(b.trunc().unwrap_or(TRUNC));
    a.with_trunc(k) == b.with_trunc(k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in arb_ql(), b in arb_ql(), c in arb_ql()) {
        prop_assert!(same(&a.add(&b).add(&c), &a.add(&b.add(&c))));
        prop_assert!(same(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c))));
        prop_assert!(same(&a.mul(&b.add(&c)), &a.mul(&b).add(&a.mul(&c))));
        prop_assert!(same(&a.mul(&b), &b.mul(&a)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn inverse_of_unit_series(tail in arb_ql(), shift in -2i64..3) {
        // 1 + (positive-order tail), times a monomial t^shift
        let pos = QLaurent::from_terms(tail.iter().filter(|(k, _)| *k > 0).map(|(k, p)| (k, p.clone())), None);
        let a = QLaurent::one().add(&pos).shift(shift);
        let inv = a.inv(TRUNC).unwrap();
        let prod = a.mul(&inv);
        prop_assert!(same(&prod, &QLaurent::one().with_trunc(prod.trunc().unwrap_or(TRUNC))));
    }
}

#[test]
fn pochhammer_recursion() {
    let us = [
        TMono::t_pow(1),
        TMono::param(1, Var::Alpha(0)),
        TMono::param(2, Var::Beta(0)),
    ];
    for u in us {
        for n in 0..=12 {
            let next = poch_finite(u, n).mul(&QLaurent::one().sub(&u.q_shift(n as i64).to_qlaurent()));
            assert_eq!(poch_finite(u, n + 1), next, "u={u} n={n}");
        }
    }
}

#[test]
fn euler_identity() {
    // Σ w^n/(q;q)_n = 1/∏_k (1 − w q^k) with w = tX
    let n = 8;
    let trunc = 30;
    let lhs = XSeries::new(
        Direction::AscendingX,
        (0..=n).map(|k| inv_qq(k, trunc).shift(k as i64)).collect(),
    );
    // factors with k ≥ 15 only enter at t^31 and above
    let rhs = poch_product_x(TMono::t_pow(1), 15, n).inv().unwrap();
    assert!(lhs.eq_to_order(&rhs).unwrap());
}
