//! Quantum curves at the two basepoints and their classical limits.

use crate::error::{Error, Result};
use crate::geometry::{classical_curve, Basepoint, ClassicalCurve, StripGeometry};
use crate::series::{MultiPoly, QLaurent, Rat, Var};

use super::operator::QOperator;

fn one_minus_shift(c: QLaurent) -> QOperator {
    QOperator::one().sub(&QOperator::term(0, 1, c))
}

fn param(v: Var, t: i64) -> QLaurent {
    QLaurent::monomial(t, MultiPoly::var(v))
}

/// `X (−1)^{f+1} t^{2+f} σ^{1+f} ∏(1 − α_j t σ) − (1 − t^{-1} σ) ∏(1 − β_j t^{-1} σ)`.
fn curve_infinity(geom: &StripGeometry) -> QOperator {
    let f = geom.framing();
    let sign = if (f + 1).rem_euclid(2) == 0 { 1 } else { -1 };
    let mut left = QOperator::x_pow(1)
        .mul(&QOperator::scalar(QLaurent::constant(Rat::int(sign)).shift(2 + f)))
        .mul(&QOperator::shift(1 + f));
    for v in geom.alpha_vars() {
        left = left.mul(&one_minus_shift(param(v, 1)));
    }
    let mut right = one_minus_shift(QLaurent::t_pow(-1));
    for v in geom.beta_vars() {
        right = right.mul(&one_minus_shift(param(v, -1)));
    }
    left.sub(&right)
}

/// Quantum curve annihilating the wave function at the given basepoint.
///
/// The basepoint-1 operator is the basepoint-∞ one composed on the right
/// with `(qσ − 1)`.
pub fn build_quantum_curve(geom: &StripGeometry, bp: Basepoint) -> QOperator {
    let a = curve_infinity(geom);
    match bp {
        Basepoint::Infinity => a,
        Basepoint::One => {
            let right = QOperator::term(0, 1, QLaurent::t_pow(2)).sub(&QOperator::one());
            a.mul(&right)
        }
    }
}

/// Substitute `t → 1`, `σ → Y`.
pub fn classical_limit(op: &QOperator) -> Result<ClassicalCurve> {
    let mut out = ClassicalCurve::zero();
    for (a, b, c) in op.terms() {
        let p = c.at_t_one()?;
        out.add_term(a as i64, b, &p);
    }
    Ok(out)
}

/// Classical limit together with the unit relating it to the mirror curve.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalFactorization {
    pub limit: ClassicalCurve,
    /// `limit = unit · A` at ∞ and `limit = unit · (Y − 1) · A` at 1.
    pub unit: Rat,
}

pub fn classical_factorization(geom: &StripGeometry, bp: Basepoint) -> Result<ClassicalFactorization> {
    let limit = classical_limit(&build_quantum_curve(geom, bp))?;
    let a = classical_curve(geom);
    let reduced = match bp {
        Basepoint::Infinity => limit.clone(),
        Basepoint::One => limit.div_y_minus_one().ok_or_else(|| Error::ResidualNonzero {
            order: "classical".into(),
            detail: "limit is not divisible by (Y - 1)".into(),
        })?,
    };
    // The unit is fixed by the X^0 Y^0 coefficient of A, which is 1.
    let unit = reduced.coeff(0, 0).as_constant().unwrap_or(Rat::ZERO);
    if unit.is_zero() || reduced != a.scale(&unit) {
        return Err(Error::ResidualNonzero {
            order: "classical".into(),
            detail: format!("limit {limit} is not a unit multiple of {a}"),
        });
    }
    Ok(ClassicalFactorization { limit, unit })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c3_framing_one_terms() {
        let op = build_quantum_curve(&StripGeometry::c3(1), Basepoint::Infinity);
        let terms: Vec<(u32, i64, String)> = op.terms().map(|(a, b, c)| (a, b, c.to_string())).collect();
        assert_eq!(
            terms,
            vec![
                (0, 0, "-1".to_string()),
                (0, 1, "t^-1".to_string()),
                (1, 2, "t^3".to_string()),
            ]
        );
    }

    #[test]
    fn c3_framing_minus_two_has_inverse_shift() {
        let op = build_quantum_curve(&StripGeometry::c3(-2), Basepoint::Infinity);
        let c = op.terms().find(|(a, b, _)| (*a, *b) == (1, -1)).map(|(_, _, c)| c.clone());
        assert_eq!(c, Some(QLaurent::constant(Rat::int(-1))));
    }

    #[test]
    fn conifold_framing_zero() {
        // −X q σ (1 − α t σ) − (1 − t^{-1} σ)
        let op = build_quantum_curve(&StripGeometry::conifold(0), Basepoint::Infinity);
        let a = QLaurent::from_poly(MultiPoly::var(Var::Alpha(0)));
        let expect = QOperator::term(1, 1, QLaurent::constant(Rat::int(-1)).shift(2))
            .add(&QOperator::term(1, 2, a.shift(3)))
            .sub(&QOperator::one())
            .add(&QOperator::term(0, 1, QLaurent::t_pow(-1)));
        assert_eq!(op, expect);
    }

    #[test]
    fn classical_limits() {
        let lim = classical_limit(&build_quantum_curve(&StripGeometry::c3(1), Basepoint::Infinity)).unwrap();
        assert_eq!(lim.to_string(), "-1 + Y + X*Y^2");
        let f = classical_factorization(&StripGeometry::conifold(0), Basepoint::One).unwrap();
        assert_eq!(f.unit, Rat::int(-1));
        assert!(classical_limit(&QOperator::zero()).unwrap().is_zero());
        let trunc = QOperator::scalar(QLaurent::one().with_trunc(3));
        assert_eq!(classical_limit(&trunc), Err(Error::TruncatedCoefficient));
    }
}
