//! Series solutions of quantum curves: Frobenius recursion and closed forms.
//!
//! Precision is relative: with `t_trunc = P` every coefficient `c_n` is
//! returned known below `v_n + P`, where `v_n` is its t-valuation.

use log::info;

use crate::error::{Error, Result};
use crate::geometry::{Basepoint, StripGeometry};
use crate::series::{poch_finite, Direction, QLaurent, Rat, TMono, XSeries};

use super::operator::QOperator;

/// `c = −S^{-1} · R` keeping `P` orders relative to the leading term.
fn solve_step(symbol: &QLaurent, rhs: &QLaurent, n: usize, rel: i64) -> Result<QLaurent> {
    if rhs.is_exact_zero() {
        return Ok(QLaurent::zero());
    }
    let vs = symbol.valuation().ok_or_else(|| Error::IndicialObstruction {
        n,
        reason: "indicial symbol vanishes".into(),
    })?;
    let inv = symbol.inv(rel - vs).map_err(|e| {
        Error::IndicialObstruction {
            n,
            reason: e.to_string(),
        }
    })?;
    Ok(inv.mul(rhs).neg())
}

/// Unique solution with `c_0 = 1` of `op ψ = 0` at recursion orders `1..=N`.
pub fn frobenius_solve(op: &QOperator, direction: Direction, n_max: usize, t_trunc: i64) -> Result<XSeries> {
    let (amin, amax) = op.x_range().ok_or_else(|| Error::IndicialObstruction {
        n: 0,
        reason: "zero operator".into(),
    })?;
    let mut coeffs = vec![QLaurent::one()];
    for n in 1..=n_max {
        let ni = n as i64;
        let (lead_symbol, rhs) = match direction {
            Direction::AscendingX => {
                let lead = op.symbol_at(amin, ni);
                let mut rhs = QLaurent::zero();
                for a in amin + 1..=amax {
                    let d = (a - amin) as usize;
                    if d > n {
                        break;
                    }
                    let m = ni - d as i64;
                    let s = op.symbol_at(a, m);
                    if !s.is_exact_zero() {
                        rhs = rhs.add(&s.mul(&coeffs[n - d]));
                    }
                }
                (lead, rhs)
            }
            Direction::AscendingXInverse => {
                let lead = op.symbol_at(amax, -ni);
                let mut rhs = QLaurent::zero();
                for a in amin..amax {
                    let d = (amax - a) as usize;
                    if d > n {
                        continue;
                    }
                    let k = n - d;
                    let s = op.symbol_at(a, -(k as i64));
                    if !s.is_exact_zero() {
                        rhs = rhs.add(&s.mul(&coeffs[k]));
                    }
                }
                (lead, rhs)
            }
        };
        coeffs.push(solve_step(&lead_symbol, &rhs, n, t_trunc)?);
    }
    Ok(XSeries::new(direction, coeffs))
}

/// Try `AscendingX`, falling back to `AscendingXInverse` on an indicial obstruction.
pub fn frobenius_solve_auto(op: &QOperator, n_max: usize, t_trunc: i64) -> Result<XSeries> {
    match frobenius_solve(op, Direction::AscendingX, n_max, t_trunc) {
        Err(Error::IndicialObstruction { n, reason }) => {
            info!("ascending X solve obstructed at n={n} ({reason}); switching to X^-1");
            frobenius_solve(op, Direction::AscendingXInverse, n_max, t_trunc)
        }
        other => other,
    }
}

/// Direction of the closed-form wave function: the `X^{-1}` series only for
/// ℂ³ at basepoint ∞ with `f ≤ −2`.
pub fn preferred_direction(geom: &StripGeometry, bp: Basepoint) -> Direction {
    if bp == Basepoint::Infinity && geom.r() == 0 && geom.s() == 0 && geom.framing() <= -2 {
        Direction::AscendingXInverse
    } else {
        Direction::AscendingX
    }
}

fn unsupported(geom: &StripGeometry, bp: Basepoint) -> Result<()> {
    if bp == Basepoint::One && geom.framing() < -1 {
        return Err(Error::UnsupportedFraming {
            framing: geom.framing(),
            basepoint: bp.to_string(),
        });
    }
    Ok(())
}

/// Closed-form wave function in its preferred direction.
pub fn closed_form_psi(geom: &StripGeometry, bp: Basepoint, n_max: usize, t_trunc: i64) -> Result<XSeries> {
    let dir = preferred_direction(geom, bp);
    if dir == Direction::AscendingXInverse {
        info!("closed form for {} uses the X^-1 expansion", geom.label());
    }
    closed_form_psi_in(geom, bp, dir, n_max, t_trunc)
}

/// Closed-form wave function in a chosen direction.
///
/// Ascending: `c_n = (−1)^{n(f+1)} t^{n²(1+f)+n} ∏(tα_j;q)_n / [(t;q)_n ∏(tβ_j;q)_n]`,
/// times `(q;q)_n/(q²;q)_n` at basepoint 1.
/// Inverse (ℂ³, basepoint ∞ only): `c_k = (−1)^{kf} t^{fk²−k} (t;q)_k`.
pub fn closed_form_psi_in(
    geom: &StripGeometry,
    bp: Basepoint,
    direction: Direction,
    n_max: usize,
    t_trunc: i64,
) -> Result<XSeries> {
    unsupported(geom, bp)?;
    let f = geom.framing();
    let t1 = TMono::t_pow(1);
    match direction {
        Direction::AscendingX => {
            let mut coeffs = Vec::with_capacity(n_max + 1);
            for n in 0..=n_max {
                let ni = n as i64;
                let mut num = QLaurent::one();
                for v in geom.alpha_vars() {
                    num = num.mul(&poch_finite(TMono::param(1, v), n));
                }
                let mut den = poch_finite(t1, n);
                for v in geom.beta_vars() {
                    den = den.mul(&poch_finite(TMono::param(1, v), n));
                }
                if bp == Basepoint::One {
                    num = num.mul(&poch_finite(TMono::t_pow(2), n));
                    den = den.mul(&poch_finite(TMono::t_pow(4), n));
                }
                let sign = if (ni * (f + 1)).rem_euclid(2) == 0 { 1 } else { -1 };
                let c = num
                    .mul(&den.inv(t_trunc).expect("unit constant term"))
                    .scale(&Rat::int(sign))
                    .shift(ni * ni * (1 + f) + ni);
                coeffs.push(c);
            }
            Ok(XSeries::new(direction, coeffs))
        }
        Direction::AscendingXInverse => {
            if geom.r() != 0 || geom.s() != 0 || bp != Basepoint::Infinity {
                return Err(Error::IndicialObstruction {
                    n: 0,
                    reason: "no X^-1 closed form outside C3 at basepoint inf".into(),
                });
            }
            let coeffs = (0..=n_max)
                .map(|k| {
                    let ki = k as i64;
                    let sign = if (ki * f).rem_euclid(2) == 0 { 1 } else { -1 };
                    poch_finite(t1, k).scale(&Rat::int(sign)).shift(f * ki * ki - ki)
                })
                .collect();
            Ok(XSeries::new(direction, coeffs))
        }
    }
}

/// Outcome of applying a quantum curve to a candidate wave function.
#[derive(Clone, Debug, PartialEq)]
pub struct Annihilation {
    /// X-exponent of the indicial (lowest-order) output coefficient.
    pub indicial_exponent: i64,
    /// The indicial output coefficient, reported as is.
    pub indicial_value: QLaurent,
    /// All recursion orders `1..=N` vanish to their truncation.
    pub recursion_vanishes: bool,
    /// `(1 − q^{-L}σ)·op` annihilates ψ at every order.
    pub homogenized_vanishes: bool,
    /// First order at which something survives, if any.
    pub first_failure: Option<usize>,
}

impl Annihilation {
    pub fn passed(&self) -> bool {
        self.recursion_vanishes && self.homogenized_vanishes
    }
}

pub fn check_annihilation(op: &QOperator, psi: &XSeries) -> Result<Annihilation> {
    let out = op.apply(psi)?;
    let l = out.exponent(0);
    let recursion_fail = out.coeffs.iter().skip(1).position(|c| !c.is_zero()).map(|i| i + 1);
    // (1 − q^{-L}σ)·Â applied to ψ, reusing Âψ.
    let hout = QOperator::one()
        .sub(&QOperator::term(0, 1, QLaurent::t_pow(-2 * l)))
        .apply(&out)?;
    let hom_fail = hout.first_nonzero();
    Ok(Annihilation {
        indicial_exponent: l,
        indicial_value: out.coeffs[0].clone(),
        recursion_vanishes: recursion_fail.is_none(),
        homogenized_vanishes: hom_fail.is_none(),
        first_failure: recursion_fail.or(hom_fail),
    })
}
