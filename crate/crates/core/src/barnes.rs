//! q-Barnes integrands for the wave functions, their shift identities, and
//! numeric residue reconstruction.
//!
//! The integrand is `∏ (u z^σ; q)_∞^ε` with `σ = ±1`, times the Gaussian
//! `exp[(f/2)(log z)²/log q − (x − iπf) log z / log q]`. The poles of
//! `1/(z;q)_∞` at `z = q^{-n}` give back the Nahm series term by term.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64 as C;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Basepoint, StripGeometry};
use crate::numeric;
use crate::series::{euler_poch, euler_poch_inv, Direction, QLaurent, TMono, XSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ZFactor {
    pub u: TMono,
    /// `+1` for `(u z; q)_∞`, `−1` for `(u/z; q)_∞`.
    pub z_power: i32,
    /// `+1` numerator, `−1` denominator.
    pub exponent: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PochConstant {
    pub u: TMono,
    pub exponent: i32,
}

/// `exp[(quadratic/2)(log z)²/log q − (x − iπ·phase) log z / log q]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GaussianData {
    pub quadratic: i64,
    pub phase: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarnesIntegrand {
    pub name: String,
    /// Constants `(u;q)_∞^ε` multiplying `i/(2π)`.
    pub prefactor: Vec<PochConstant>,
    pub z_factors: Vec<ZFactor>,
    pub gaussian: GaussianData,
}

/// Gaussian factor at `z = q^{-n}`: `t^{t_power} e^{x_multiple·x} · sign`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GaussianAtPole {
    pub t_power: i64,
    pub x_multiple: i64,
    pub sign: i64,
}

impl GaussianData {
    /// With `log z = −n log q` the exponent is `(quadratic·n²/2) log q + n x − iπ·phase·n`.
    pub fn at_pole(&self, n: i64) -> GaussianAtPole {
        GaussianAtPole {
            t_power: self.quadratic * n * n,
            x_multiple: n,
            sign: if (self.phase * n).rem_euclid(2) == 0 { 1 } else { -1 },
        }
    }

    /// Direct evaluation at a point, principal `log z`.
    pub fn eval(&self, z: C, x: C, q: f64) -> C {
        let lz = z.ln();
        let lq = q.ln();
        let ipi = C::new(0.0, PI * self.phase as f64);
        (lz * lz * (self.quadratic as f64 / 2.0) / lq - (x - ipi) * lz / lq).exp()
    }
}

fn pole_source() -> ZFactor {
    ZFactor {
        u: TMono::t_pow(0),
        z_power: 1,
        exponent: -1,
    }
}

fn over_z(u: TMono, exponent: i32) -> ZFactor {
    ZFactor { u, z_power: -1, exponent }
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

pub fn build_integrand(geom: &StripGeometry, bp: Basepoint) -> Result<BarnesIntegrand> {
    unsupported(geom, bp)?;
    let letter = match (geom.r(), geom.s()) {
        (0, 0) => "F",
        (1, 0) => "G",
        _ => "L",
    };
    let t = TMono::t_pow(1);
    let q = TMono::t_pow(2);
    let mut z_factors = vec![pole_source(), over_z(t, 1)];
    let mut prefactor = vec![
        PochConstant { u: q, exponent: 2 },
        PochConstant { u: t, exponent: -1 },
    ];
    for v in geom.beta_vars() {
        z_factors.push(over_z(TMono::param(1, v), 1));
        prefactor.push(PochConstant {
            u: TMono::param(1, v),
            exponent: -1,
        });
    }
    z_factors.push(over_z(q, -1));
    for v in geom.alpha_vars() {
        z_factors.push(over_z(TMono::param(1, v), -1));
        prefactor.push(PochConstant {
            u: TMono::param(1, v),
            exponent: 1,
        });
    }
    if bp == Basepoint::One {
        z_factors.push(over_z(TMono::t_pow(4), 1));
        z_factors.push(over_z(q, -1));
        prefactor.push(PochConstant { u: q, exponent: 1 });
        prefactor.push(PochConstant {
            u: TMono::t_pow(4),
            exponent: -1,
        });
    }
    let f = geom.framing();
    Ok(BarnesIntegrand {
        name: format!("{letter}_{bp}"),
        prefactor,
        z_factors,
        gaussian: GaussianData { quadratic: f, phase: f },
    })
}

/// Laurent polynomial or truncated bi-Laurent series in `z`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ZLaurent {
    pub terms: BTreeMap<i64, QLaurent>,
}

impl ZLaurent {
    pub fn one() -> ZLaurent {
        ZLaurent::monomial(0, QLaurent::one())
    }

    pub fn monomial(k: i64, c: QLaurent) -> ZLaurent {
        let mut terms = BTreeMap::new();
        terms.insert(k, c);
        ZLaurent { terms }
    }

    /// `1 − c z^k`.
    pub fn one_minus(c: QLaurent, k: i64) -> ZLaurent {
        ZLaurent::one().add(&ZLaurent::monomial(k, c.neg()))
    }

    pub fn add(&self, o: &ZLaurent) -> ZLaurent {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            let slot = out.terms.entry(*k).or_default();
            *slot = slot.add(c);
        }
        out.terms.retain(|_, c| !c.is_exact_zero());
        out
    }

    pub fn neg(&self) -> ZLaurent {
        ZLaurent {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn mul(&self, o: &ZLaurent) -> ZLaurent {
        let mut out: BTreeMap<i64, QLaurent> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                out.entry(a + b).or_default().add_mul_shifted(ca, cb, 0);
            }
        }
        out.retain(|_, c| !c.is_exact_zero());
        ZLaurent { terms: out }
    }

    fn degree_range(&self) -> (i64, i64) {
        let lo = self.terms.keys().next().copied().unwrap_or(0);
        let hi = self.terms.keys().next_back().copied().unwrap_or(0);
        (lo, hi)
    }
}

/// `L(qz) = (num/den)(z) · L(z)` as two Laurent polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftRatio {
    pub num: ZLaurent,
    pub den: ZLaurent,
}

impl ShiftRatio {
    /// Same rational function, by cross-multiplication.
    pub fn same_as(&self, o: &ShiftRatio) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl BarnesIntegrand {
    /// Shift ratio read off the factors:
    /// `(uz;q)_∞ → (uz;q)_∞/(1−uz)` and `(u/z;q)_∞ → (1 − u q^{-1}/z)(u/z;q)_∞`.
    pub fn shift_ratio(&self) -> ShiftRatio {
        let mut num = ZLaurent::one();
        let mut den = ZLaurent::one();
        for f in &self.z_factors {
            let (factor, up) = if f.z_power > 0 {
                (ZLaurent::one_minus(f.u.to_qlaurent(), 1), f.exponent < 0)
            } else {
                (ZLaurent::one_minus(f.u.q_shift(-1).to_qlaurent(), -1), f.exponent > 0)
            };
            for _ in 0..f.exponent.unsigned_abs() {
                if up {
                    num = num.mul(&factor);
                } else {
                    den = den.mul(&factor);
                }
            }
        }
        ShiftRatio { num, den }
    }

    /// Bi-Laurent expansion for `|m| ≤ z_max`, coefficients below `t^{t_trunc}`.
    ///
    /// Factors in `1/z` need strictly positive t-order so that the `w = 1/z`
    /// series converges t-adically.
    pub fn expand(&self, z_max: i64, t_trunc: i64) -> Result<ZLaurent> {
        let b_max = t_trunc.max(0) as usize;
        let a_max = z_max.max(0) as usize + b_max;
        let mut pos = XSeries::one(Direction::AscendingX, a_max);
        let mut neg = XSeries::one(Direction::AscendingX, b_max);
        for f in &self.z_factors {
            if f.z_power < 0 && f.u.t <= 0 {
                return Err(Error::InvalidGeometry(format!("1/z factor ({}/z;q) has no positive t-order", f.u)));
            }
            let n = if f.z_power > 0 { a_max } else { b_max };
            let base = if f.exponent > 0 {
                euler_poch(f.u, n, t_trunc)
            } else {
                euler_poch_inv(f.u, n, t_trunc)
            };
            let target = if f.z_power > 0 { &mut pos } else { &mut neg };
            for _ in 0..f.exponent.unsigned_abs() {
                *target = target.mul(&base)?;
            }
        }
        let mut terms = BTreeMap::new();
        for m in -z_max..=z_max {
            let mut acc = QLaurent::zero();
            for (b, cb) in neg.coeffs.iter().enumerate() {
                let a = m + b as i64;
                if a < 0 || a as usize > a_max {
                    continue;
                }
                acc.add_mul_shifted(&pos.coeffs[a as usize], cb, 0);
            }
            // terms with b > b_max have t-order above b_max
            terms.insert(m, acc.with_trunc(t_trunc.min(b_max as i64 + 1)));
        }
        Ok(ZLaurent { terms })
    }
}

/// The displayed shift ratio:
/// `−(z − t^{-1}) z^{r−s} ∏(z − t^{-1}β)/∏(z − t^{-1}α)`, times `(z − q)/(z − 1)` at basepoint 1.
pub fn display_shift_ratio(geom: &StripGeometry, bp: Basepoint) -> ShiftRatio {
    let tinv = QLaurent::t_pow(-1);
    let lin = |c: QLaurent| ZLaurent::monomial(1, QLaurent::one()).add(&ZLaurent::monomial(0, c.neg()));
    let mut num = lin(tinv.clone()).neg();
    let mut den = ZLaurent::one();
    let (r, s) = (geom.r() as i64, geom.s() as i64);
    let zpow = ZLaurent::monomial((r - s).abs(), QLaurent::one());
    if r >= s {
        num = num.mul(&zpow);
    } else {
        den = den.mul(&zpow);
    }
    for v in geom.beta_vars() {
        num = num.mul(&lin(tinv.mul(&TMono::param(0, v).to_qlaurent())));
    }
    for v in geom.alpha_vars() {
        den = den.mul(&lin(tinv.mul(&TMono::param(0, v).to_qlaurent())));
    }
    if bp == Basepoint::One {
        num = num.mul(&lin(QLaurent::t_pow(2)));
        den = den.mul(&lin(QLaurent::one()));
    }
    ShiftRatio { num, den }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShiftReport {
    pub name: String,
    pub z_max: i64,
    pub t_trunc: i64,
    pub checked: usize,
}

/// `L(qz)·den(z) − num(z)·L(z)` at every z-degree `|m| ≤ z_max`, below `t^{t_trunc}`.
///
/// Only the uncancelled factor-by-factor ratio is a valid identity between
/// the two expansions; `L(z)` and `L(qz)` live in annuli on either side of
/// the pole at `z = 1`.
pub fn shift_residual(ig: &BarnesIntegrand, ratio: &ShiftRatio, z_max: i64, t_trunc: i64) -> Result<ShiftReport> {
    let (nlo, nhi) = ratio.num.degree_range();
    let (dlo, dhi) = ratio.den.degree_range();
    let pad = nlo.abs().max(nhi.abs()).max(dlo.abs()).max(dhi.abs());
    let ext = z_max + pad;
    // L(qz) enters at z-degrees down to −(z_max + dhi); each such q^m shift and
    // the t^{-1} powers in the ratio lower the known order
    let min_t = ratio
        .num
        .terms
        .values()
        .chain(ratio.den.terms.values())
        .filter_map(|c| c.iter().next().map(|(k, _)| k))
        .min()
        .unwrap_or(0);
    let inner = t_trunc + 2 * (z_max + dhi.max(0)).max(0) + (-min_t).max(0);
    let l = ig.expand(ext, inner)?;
    let lq = ZLaurent {
        terms: l.terms.iter().map(|(m, c)| (*m, c.shift(2 * m))).collect(),
    };
    let lhs = lq.mul(&ratio.den);
    let rhs = l.mul(&ratio.num);
    let mut checked = 0;
    for m in -z_max..=z_max {
        let a = lhs.terms.get(&m).cloned().unwrap_or_default();
        let b = rhs.terms.get(&m).cloned().unwrap_or_default();
        let diff = a.sub(&b).with_trunc(t_trunc);
        if let Some((k, _)) = diff.iter().next() {
            return Err(Error::ResidualNonzero {
                order: format!("z^{m} t^{k}"),
                detail: format!("{} shift identity", ig.name),
            });
        }
        if diff.trunc().is_some_and(|tr| tr < t_trunc) {
            return Err(Error::TruncatedCoefficient);
        }
        checked += 1;
    }
    Ok(ShiftReport {
        name: ig.name.clone(),
        z_max,
        t_trunc,
        checked,
    })
}

/// Shift identity with the ratio read off the integrand's own factors.
pub fn integrand_shift_check(ig: &BarnesIntegrand, z_max: i64, t_trunc: i64) -> Result<ShiftReport> {
    shift_residual(ig, &ig.shift_ratio(), z_max, t_trunc)
}

/// Contour orientation constant multiplying `Σ Res`.
pub const ORIENTATION: C = C::new(0.0, 2.0 * PI);

/// Terms must shrink below this fraction of the sum.
pub const TAIL_TOL: f64 = 1e-13;

struct NumParams {
    alpha: Vec<C>,
    beta: Vec<C>,
    t: f64,
}

impl NumParams {
    fn new(geom: &StripGeometry, q: f64) -> Result<NumParams> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::ConvergenceDomain(format!("q = {q} is outside (0, 1)")));
        }
        let (alpha, beta) = geom.values()?;
        Ok(NumParams {
            alpha,
            beta,
            t: q.sqrt(),
        })
    }

    fn tmono(&self, u: &TMono) -> C {
        let m = u.mono.eval(&self.alpha, &self.beta);
        let s = if u.negative { -1.0 } else { 1.0 };
        m * s * self.t.powi(u.t as i32)
    }
}

fn check_tail(terms: &[C], sum: C) -> Result<()> {
    let n = terms.len();
    if n < 2 {
        return Ok(());
    }
    let last = terms[n - 1].norm();
    let prev = terms[n - 2].norm();
    if last == 0.0 {
        return Ok(());
    }
    let ratio = if prev == 0.0 { f64::INFINITY } else { last / prev };
    let tail = if ratio < 1.0 { last * ratio / (1.0 - ratio) } else { f64::INFINITY };
    if tail > TAIL_TOL * sum.norm().max(1.0) {
        return Err(Error::ConvergenceBudget { terms: n, tail });
    }
    Ok(())
}

/// Termwise Nahm series `Σ_{n≤N} c_n e^{nx}` in the ascending direction.
pub fn numeric_terms(geom: &StripGeometry, bp: Basepoint, x: C, q: f64, n_max: usize) -> Result<Vec<C>> {
    unsupported(geom, bp)?;
    let p = NumParams::new(geom, q)?;
    let f = geom.framing();
    let t = C::new(p.t, 0.0);
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let ni = n as i64;
        let mut log = C::new(((ni * ni * (1 + f) + ni) as f64) * p.t.ln(), 0.0) + x * ni as f64;
        for a in &p.alpha {
            log += numeric::poch_finite(t * a, q, n).ln();
        }
        log -= numeric::poch_finite(t, q, n).ln();
        for b in &p.beta {
            log -= numeric::poch_finite(t * b, q, n).ln();
        }
        if bp == Basepoint::One {
            log += numeric::poch_finite(C::new(q, 0.0), q, n).ln();
            log -= numeric::poch_finite(C::new(q * q, 0.0), q, n).ln();
        }
        let sign = if (ni * (f + 1)).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        out.push(log.exp() * sign);
    }
    Ok(out)
}

pub fn numeric_psi(geom: &StripGeometry, bp: Basepoint, x: C, q: f64, n_max: usize) -> Result<C> {
    let terms = numeric_terms(geom, bp, x, q, n_max)?;
    let sum = terms.iter().sum();
    check_tail(&terms, sum)?;
    Ok(sum)
}

/// `i/(2π) ∏ (u;q)_∞^ε`.
pub fn prefactor_value(ig: &BarnesIntegrand, geom: &StripGeometry, q: f64) -> Result<C> {
    let p = NumParams::new(geom, q)?;
    let mut log = C::new(0.0, 0.0);
    for c in &ig.prefactor {
        log += numeric::log_poch_inf(p.tmono(&c.u), q) * c.exponent as f64;
    }
    Ok(log.exp() * C::new(0.0, 1.0 / (2.0 * PI)))
}

/// `Res_{z=q^{-n}}` of `integrand(z)/z`, without prefactor or orientation.
pub fn residues(ig: &BarnesIntegrand, geom: &StripGeometry, x: C, q: f64, n_res: usize) -> Result<Vec<C>> {
    let p = NumParams::new(geom, q)?;
    let source = pole_source();
    if !ig.z_factors.contains(&source) {
        return Err(Error::InvalidGeometry("integrand has no 1/(z;q) pole tower".into()));
    }
    let log_qq = numeric::log_poch_inf(C::new(q, 0.0), q);
    let mut out = Vec::with_capacity(n_res + 1);
    for n in 0..=n_res {
        let ni = n as i64;
        let z = q.powi(-(n as i32));
        // 1/(z;q)_∞ with the vanishing factor removed: −1/[∏_{m≤n}(1 − q^{-m}) (q;q)_∞]
        let mut log = -log_qq;
        let mut sign = -1.0;
        for m in 1..=n {
            let v = 1.0 - q.powi(-(m as i32));
            log -= C::new(v.abs().ln(), 0.0);
            if v < 0.0 {
                sign = -sign;
            }
        }
        let mut skipped = false;
        for f in &ig.z_factors {
            if *f == source && !skipped {
                skipped = true;
                continue;
            }
            let zz = if f.z_power > 0 { z } else { 1.0 / z };
            log += numeric::log_poch_inf(p.tmono(&f.u) * zz, q) * f.exponent as f64;
        }
        let g = ig.gaussian.at_pole(ni);
        log += C::new(g.t_power as f64 * p.t.ln(), 0.0) + x * g.x_multiple as f64;
        out.push(log.exp() * (sign * g.sign as f64));
    }
    Ok(out)
}

pub fn residue_sum(geom: &StripGeometry, bp: Basepoint, x: C, q: f64, n_res: usize) -> Result<C> {
    let ig = build_integrand(geom, bp)?;
    let pre = prefactor_value(&ig, geom, q)? * ORIENTATION;
    let terms: Vec<C> = residues(&ig, geom, x, q, n_res)?.into_iter().map(|r| r * pre).collect();
    let sum = terms.iter().sum();
    check_tail(&terms, sum)?;
    Ok(sum)
}

/// Orientation constant that makes the `n = 0` residue equal to 1.
pub fn fitted_orientation(geom: &StripGeometry, bp: Basepoint, q: f64) -> Result<C> {
    let ig = build_integrand(geom, bp)?;
    let r0 = residues(&ig, geom, C::new(0.0, 0.0), q, 0)?[0];
    Ok(C::new(1.0, 0.0) / (r0 * prefactor_value(&ig, geom, q)?))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericReport {
    pub geometry: String,
    pub basepoint: Basepoint,
    pub x: [f64; 2],
    pub q: f64,
    pub n: usize,
    pub n_res: usize,
    pub series: [f64; 2],
    pub residue: [f64; 2],
    pub abs_diff: f64,
    pub orientation: [f64; 2],
}

pub fn numeric_report(geom: &StripGeometry, bp: Basepoint, x: C, q: f64, n: usize, n_res: usize) -> Result<NumericReport> {
    let series = numeric_psi(geom, bp, x, q, n)?;
    let residue = residue_sum(geom, bp, x, q, n_res)?;
    let o = fitted_orientation(geom, bp, q)?;
    Ok(NumericReport {
        geometry: geom.label(),
        basepoint: bp,
        x: [x.re, x.im],
        q,
        n,
        n_res,
        series: [series.re, series.im],
        residue: [residue.re, residue.im],
        abs_diff: (series - residue).norm(),
        orientation: [o.re, o.im],
    })
}

/// Exact check of the Gaussian at the first `n_max` poles against the
/// symbolic form `t^{f n²} e^{n x} (−1)^{f n}`.
pub fn gaussian_symbolic_check(ig: &BarnesIntegrand, framing: i64, n_max: i64) -> bool {
    (0..=n_max).all(|n| {
        let g = ig.gaussian.at_pole(n);
        g.t_power == framing * n * n
            && g.x_multiple == n
            && g.sign == if (framing * n).rem_euclid(2) == 0 { 1 } else { -1 }
    })
}
