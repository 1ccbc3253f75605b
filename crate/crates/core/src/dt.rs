//! Euler-product decomposition `ψ = ∏ (1 − X^d t^s m)^{e}` of wave functions
//! and the classical `Y(X) = 1 + O(X)` branch of the mirror curve.

use log::debug;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{classical_curve, Basepoint, StripGeometry};
use crate::quantization::preferred_direction;
use crate::series::{Direction, Monomial, MultiPoly, QLaurent, Rat, XSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DTFactor {
    /// X-degree, at least 1.
    pub d: usize,
    /// α/β part of the factor's monomial.
    pub multidegree: Monomial,
    /// Power of `t = q^{1/2}`.
    pub s: i64,
    pub e: Rat,
    pub integral: bool,
}

impl DTFactor {
    fn key(&self) -> (usize, Vec<u16>, i64) {
        (self.d, self.multidegree.exponents().to_vec(), self.s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DTFactorization {
    pub direction: Direction,
    pub order: usize,
    pub factors: Vec<DTFactor>,
    /// `known_below[d]`: factors of degree `d` are complete for `s` below this.
    pub known_below: Vec<Option<i64>>,
}

impl DTFactorization {
    pub fn all_integral(&self) -> bool {
        self.factors.iter().all(|f| f.integral)
    }

    pub fn degree(&self, d: usize) -> impl Iterator<Item = &DTFactor> {
        self.factors.iter().filter(move |f| f.d == d)
    }
}

/// `Σ_k (1/k) · adams_k(E) X^{dk}`, up to X-order `n`.
fn plethystic_log_term(e: &QLaurent, d: usize, n: usize, direction: Direction) -> XSeries {
    let mut coeffs = vec![QLaurent::zero(); n + 1];
    let mut k = 1;
    while d * k <= n {
        coeffs[d * k] = e.adams(k as u32).scale(&Rat::new(1, k as i64));
        k += 1;
    }
    XSeries::new(direction, coeffs)
}

/// Greedy graded decomposition of a normalized series, to X-order `n` and
/// below `t^{t_trunc}`.
pub fn product_decompose(psi: &XSeries, n: usize, t_trunc: i64) -> Result<DTFactorization> {
    if psi.lead != 0 || psi.coeffs.is_empty() || !psi.coeffs[0].with_trunc(t_trunc).eq_to_order(&QLaurent::one()) {
        return Err(Error::NonUnitConstant);
    }
    let n = n.min(psi.order());
    let mut rest = psi.truncate_order(n).with_trunc(t_trunc);
    let mut factors = Vec::new();
    let mut known_below = vec![None; n + 1];
    for d in 1..=n {
        let rd = rest.coeffs[d].clone();
        known_below[d] = rd.trunc();
        for (s, p) in rd.iter() {
            for (m, c) in p.terms() {
                let e = -c.clone();
                factors.push(DTFactor {
                    d,
                    multidegree: *m,
                    s,
                    integral: e.is_integer(),
                    e,
                });
            }
        }
        // divide by ∏(1 − M)^e = exp(−Σ_k adams_k(E_d)/k)
        let e_d = rd.neg();
        let divisor_inv = plethystic_log_term(&e_d, d, n, rest.direction).exp()?;
        rest = rest.mul(&divisor_inv)?;
        debug!("degree {d}: residual now starts at X^{:?}", rest.first_nonzero());
    }
    factors.sort_by_key(|a| a.key());
    Ok(DTFactorization {
        direction: psi.direction,
        order: n,
        factors,
        known_below,
    })
}

/// Expand the factor list with binomial series. Missing factors beyond
/// `known_below` are carried as unknown terms.
pub fn refactor_check(fac: &DTFactorization, n: usize, t_trunc: i64) -> Result<XSeries> {
    let mut acc = XSeries::one(fac.direction, n);
    for f in &fac.factors {
        if f.d > n {
            continue;
        }
        let m = QLaurent::term(f.s, f.multidegree, Rat::ONE);
        let mut coeffs = vec![QLaurent::zero(); n + 1];
        let mut k = 0;
        while f.d * k <= n {
            // binom(e, k) (−M)^k
            let sign = if k % 2 == 0 { Rat::ONE } else { Rat::int(-1) };
            coeffs[f.d * k] = m.pow(k as u32).scale(&(f.e.binom(k as u32) * sign));
            k += 1;
        }
        acc = acc.mul(&XSeries::new(fac.direction, coeffs))?;
    }
    for (d, kb) in fac.known_below.iter().enumerate().skip(1) {
        if let (Some(t), true) = (kb, d <= n) {
            let mut coeffs = vec![QLaurent::zero(); n + 1];
            coeffs[0] = QLaurent::one();
            coeffs[d] = QLaurent::truncated_zero(*t);
            acc = acc.mul(&XSeries::new(fac.direction, coeffs))?;
        }
    }
    Ok(acc.with_trunc(t_trunc))
}

/// The `Y = 1 + O(X)` branch of the mirror curve, coefficients of `X^0..X^n`.
pub fn classical_y_branch(geom: &StripGeometry, n: usize) -> Result<Vec<MultiPoly>> {
    if preferred_direction(geom, Basepoint::Infinity) != Direction::AscendingX {
        return Err(Error::NoUnitBranch(format!(
            "{}: the wave function has no ascending-X expansion",
            geom.label()
        )));
    }
    let a = classical_curve(&geom.to_symbolic());
    // ∂_Y A at (0, 1) is −∏(1 − β_j)
    let mut deriv = MultiPoly::one();
    for v in geom.beta_vars() {
        deriv = deriv.mul(&MultiPoly::one().sub(&MultiPoly::var(v)));
    }
    if deriv != MultiPoly::one() {
        return Err(Error::NoUnitBranch(format!(
            "{}: dA/dY = -({deriv}) at (0, 1) is not a unit",
            geom.label()
        )));
    }
    let dir = Direction::AscendingX;
    let mut y = XSeries::one(dir, n);
    for _ in 0..=n {
        let yinv = y.inv()?;
        let mut val = XSeries::zero(dir, n);
        for (&(xa, yb), c) in a.terms() {
            let power = if yb >= 0 { pow_series(&y, yb as u32)? } else { pow_series(&yinv, (-yb) as u32)? };
            let mut coeffs = vec![QLaurent::zero(); n + 1];
            if (xa as usize) <= n {
                coeffs[xa as usize] = QLaurent::from_poly(c.clone());
            }
            val = val.add(&XSeries::new(dir, coeffs).mul(&power)?)?;
        }
        y = y.add(&val)?;
    }
    Ok(y.coeffs.iter().map(|c| c.coeff(0)).collect())
}

fn pow_series(y: &XSeries, k: u32) -> Result<XSeries> {
    let mut acc = XSeries::one(y.direction, y.order());
    for _ in 0..k {
        acc = acc.mul(y)?;
    }
    Ok(acc)
}
