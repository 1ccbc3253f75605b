//! Dual wave function, its q-difference equation, and the ħ expansion of
//! the Pochhammer part.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::StripGeometry;
use crate::numeric::{bernoulli, log_poch_inf, polylog};
use crate::series::pochhammer::{euler_poch, euler_poch_inv};
use crate::series::{Direction, MultiPoly, Rat, TMono, Var, XSeries};

type C = Complex64;

/// `ψ^∨(z) = √z · ∏(zα_jt;q)_∞ / [(zt;q)_∞ ∏(zβ_jt;q)_∞] · e^{g log²z/(2ħ)} · e^{k iπ log z/ħ}`
/// with `g = −(1+f)` and `k = f+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualWave {
    pub sqrt_z: bool,
    /// Arguments `u` of numerator factors `(u z;q)_∞`.
    pub numerator: Vec<TMono>,
    /// Arguments `u` of denominator factors `(u z;q)_∞`.
    pub denominator: Vec<TMono>,
    pub gaussian: i64,
    pub phase: i64,
    pub framing: i64,
}

pub fn dual_wave(geom: &StripGeometry) -> DualWave {
    let mut denominator = vec![TMono::t_pow(1)];
    denominator.extend(geom.beta_vars().map(|v| TMono::param(1, v)));
    DualWave {
        sqrt_z: true,
        numerator: geom.alpha_vars().map(|v| TMono::param(1, v)).collect(),
        denominator,
        gaussian: -(1 + geom.framing()),
        phase: geom.framing() + 1,
        framing: geom.framing(),
    }
}

/// Exact polynomial in `y`, `ħ^{±1}` and `iπ`, for exponent bookkeeping.
#[derive(Clone, Debug, Default, PartialEq)]
struct LogPoly {
    /// (power of y, power of ħ, power of iπ) → coefficient
    terms: BTreeMap<(u32, i32, u32), Rat>,
}

impl LogPoly {
    fn add_term(&mut self, k: (u32, i32, u32), c: &Rat) {
        let slot = self.terms.entry(k).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    fn sub(&self, o: &LogPoly) -> LogPoly {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, &-c);
        }
        out
    }

    /// Substitute `y → y + cħ`.
    fn shift_y(&self, c: &Rat) -> LogPoly {
        let mut out = LogPoly::default();
        for ((a, h, p), coef) in &self.terms {
            for j in 0..=*a {
                let w = &(coef * &Rat::int(*a as i64).binom(j)) * &c.pow(a - j);
                out.add_term((j, h + (a - j) as i32, *p), &w);
            }
        }
        out
    }
}

/// Prefactor exponent `½y + g y²/(2ħ) + k iπ y/ħ`.
fn prefactor_log(dw: &DualWave) -> LogPoly {
    let mut p = LogPoly::default();
    if dw.sqrt_z {
        p.add_term((1, 0, 0), &Rat::new(1, 2));
    }
    p.add_term((2, -1, 0), &Rat::new(dw.gaussian, 2));
    p.add_term((1, -1, 1), &Rat::int(dw.phase));
    p
}

/// Result of checking the dual difference equation.
#[derive(Clone, Debug, PartialEq)]
pub struct DualCheck {
    /// Prefactor ratio equals `e^{ħ/2} e^{−(1+f)y} (−1)^{f+1}` exactly.
    pub prefactor_ok: bool,
    /// `P(zt)∏(1−α_jz) − (1−z)∏(1−β_jz)P(z/t)` as a z-series.
    pub residual: XSeries,
}

impl DualCheck {
    pub fn passed(&self) -> bool {
        self.prefactor_ok && self.residual.is_zero()
    }
}

fn pochhammer_part(dw: &DualWave, z_trunc: usize, t_trunc: i64) -> XSeries {
    let mut p = XSeries::one(Direction::AscendingX, z_trunc);
    for u in &dw.numerator {
        p = p.mul(&euler_poch(*u, z_trunc, t_trunc)).expect("same direction");
    }
    for u in &dw.denominator {
        p = p.mul(&euler_poch_inv(*u, z_trunc, t_trunc)).expect("same direction");
    }
    p
}

fn linear_factor(m: TMono, n: usize) -> XSeries {
    // 1 − m z
    let mut s = XSeries::one(Direction::AscendingX, n);
    if n >= 1 {
        s.coeffs[1] = m.to_qlaurent().neg();
    }
    s
}

/// Check `ψ^∨(y+ħ/2) = e^{ħ/2}(1−z)∏(1−β_jz) / [(−1)^{f+1} z^{1+f} ∏(1−α_jz)] · ψ^∨(y−ħ/2)`
/// split into the exact prefactor bookkeeping and a truncated z-series identity.
pub fn verify_dual_difference(dw: &DualWave, z_trunc: usize, t_trunc: i64) -> Result<DualCheck> {
    let g = prefactor_log(dw);
    let diff = g.shift_y(&Rat::new(1, 2)).sub(&g.shift_y(&Rat::new(-1, 2)));
    let mut expect = LogPoly::default();
    expect.add_term((0, 1, 0), &Rat::new(1, 2));
    expect.add_term((1, 0, 0), &Rat::int(-(1 + dw.framing)));
    expect.add_term((0, 0, 1), &Rat::int(dw.framing + 1));
    // iπ multiples agree modulo 2πi
    let rest = diff.sub(&expect);
    let prefactor_ok = rest.terms.iter().all(|(k, c)| {
        *k == (0, 0, 1) && c.as_i64().is_some_and(|n| n % 2 == 0)
    });

    let p = pochhammer_part(dw, z_trunc, t_trunc);
    let mut lhs = p.rescale_t(1);
    for u in &dw.numerator {
        let alpha = TMono { t: 0, ..*u };
        lhs = lhs.mul(&linear_factor(alpha, z_trunc))?;
    }
    let mut rhs = p.rescale_t(-1).mul(&linear_factor(TMono::t_pow(0), z_trunc))?;
    for u in dw.denominator.iter().skip(1) {
        let beta = TMono { t: 0, ..*u };
        rhs = rhs.mul(&linear_factor(beta, z_trunc))?;
    }
    let residual = lhs.sub(&rhs)?;
    if let Some(i) = residual.first_nonzero() {
        let (k, c) = residual.coeffs[i].iter().next().map(|(k, c)| (k, c.clone())).unwrap();
        return Err(Error::ResidualNonzero {
            order: format!("z^{i} t^{k}"),
            detail: c.to_string(),
        });
    }
    if !prefactor_ok {
        return Err(Error::ResidualNonzero {
            order: "prefactor".into(),
            detail: format!("{:?}", rest.terms),
        });
    }
    Ok(DualCheck {
        prefactor_ok,
        residual,
    })
}

/// Argument of a polylogarithm term: `z`, `α_j z` or `β_j z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PolylogArg {
    Z,
    Param(Var),
}

/// One ħ-layer: `ħ^{power} · Σ weight · Li_{order}(arg)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HbarLayer {
    pub power: i64,
    pub order: i32,
    pub terms: Vec<(Rat, PolylogArg)>,
}

/// ħ expansion of `log` of the Pochhammer part of the dual wave function,
/// together with its framing data.
#[derive(Clone, Debug, PartialEq)]
pub struct HbarExpansion {
    pub layers: Vec<HbarLayer>,
    /// Coefficient `−(1+f)` of `log²z/(2ħ)`.
    pub gaussian: i64,
    /// Coefficient `f+1` of `iπ log z/ħ`.
    pub phase: i64,
    /// Unshifted weights `B_n/n!` for each layer.
    pub bernoulli_weights: Vec<Rat>,
    /// Contribution of the `e^{(ħ/2)∂_y}` shift to each layer.
    pub shift_weights: Vec<Rat>,
}

/// Build layers `n = 0..=G+1`: log of the Pochhammer part is
/// `−Σ_n ħ^{n−1} w_n F_{2−n}(z)` with `F_s = Li_s(z) + ΣLi_s(β_jz) − ΣLi_s(α_jz)`
/// and `w_n = Σ_{k+m=n} (B_k/k!)·(1/2)^m/m!` from composing with the half shift.
pub fn omega_dual_expansion(geom: &StripGeometry, g_max: usize) -> HbarExpansion {
    let n_layers = g_max + 2;
    let b = bernoulli(n_layers);
    let mut fact = vec![Rat::ONE];
    for k in 1..=n_layers {
        fact.push(&fact[k - 1] * &Rat::int(k as i64));
    }
    let half = Rat::new(1, 2);
    let mut layers = Vec::new();
    let mut bw = Vec::new();
    let mut sw = Vec::new();
    for n in 0..n_layers {
        let mut w = Rat::ZERO;
        for k in 0..=n {
            let m = n - k;
            w += &(&(&b[k] / &fact[k]) * &(&half.pow(m as u32) / &fact[m]));
        }
        let unshifted = &b[n] / &fact[n];
        sw.push(&w - &unshifted);
        bw.push(unshifted);
        let mut terms = vec![(-&w, PolylogArg::Z)];
        for v in geom.beta_vars() {
            terms.push((-&w, PolylogArg::Param(v)));
        }
        for v in geom.alpha_vars() {
            terms.push((w.clone(), PolylogArg::Param(v)));
        }
        layers.push(HbarLayer {
            power: n as i64 - 1,
            order: 2 - n as i32,
            terms,
        });
    }
    HbarExpansion {
        layers,
        gaussian: -(1 + geom.framing()),
        phase: geom.framing() + 1,
        bernoulli_weights: bw,
        shift_weights: sw,
    }
}

impl HbarExpansion {
    fn arg_value(arg: PolylogArg, z: C, alpha: &[C], beta: &[C]) -> C {
        match arg {
            PolylogArg::Z => z,
            PolylogArg::Param(Var::Alpha(j)) => alpha[j] * z,
            PolylogArg::Param(Var::Beta(j)) => beta[j] * z,
        }
    }

    /// Value of layer `n` without its ħ power.
    pub fn layer_value(&self, n: usize, z: C, alpha: &[C], beta: &[C]) -> C {
        let l = &self.layers[n];
        l.terms
            .iter()
            .map(|(w, a)| polylog(l.order, Self::arg_value(*a, z, alpha, beta)) * w.to_f64())
            .sum()
    }

    /// Partial sum over all stored layers at the given ħ.
    pub fn partial_sum(&self, z: C, hbar: f64, alpha: &[C], beta: &[C]) -> C {
        (0..self.layers.len())
            .map(|n| self.layer_value(n, z, alpha, beta) * hbar.powi(self.layers[n].power as i32))
            .sum()
    }
}

/// `log ∏(zα_jt;q)_∞ − log (zt;q)_∞ − Σ log (zβ_jt;q)_∞` at `q = e^ħ`, `ħ < 0`.
pub fn exact_log_pochhammer(z: C, hbar: f64, alpha: &[C], beta: &[C]) -> C {
    let q = hbar.exp();
    let t = (hbar / 2.0).exp();
    let mut acc = -log_poch_inf(z * t, q);
    for b in beta {
        acc -= log_poch_inf(b * z * t, q);
    }
    for a in alpha {
        acc += log_poch_inf(a * z * t, q);
    }
    acc
}

/// Error of the expansion at `ħ` and `ħ/2`, and their ratio.
pub fn decay_check(
    exp: &HbarExpansion,
    z: C,
    hbar: f64,
    alpha: &[C],
    beta: &[C],
) -> Result<(f64, f64, f64)> {
    let scale = alpha.iter().chain(beta).map(|p| p.norm()).fold(1.0, f64::max);
    if z.norm() * scale >= 1.0 {
        return Err(Error::ConvergenceDomain(format!("|z|·max(1,|params|) = {}", z.norm() * scale)));
    }
    if hbar >= 0.0 {
        return Err(Error::ConvergenceDomain("need ħ < 0 so that |q| < 1".into()));
    }
    let err = |h: f64| (exact_log_pochhammer(z, h, alpha, beta) - exp.partial_sum(z, h, alpha, beta)).norm();
    let e1 = err(hbar);
    let e2 = err(hbar / 2.0);
    Ok((e1, e2, e1 / e2))
}

/// Shorthand used by reports: the symbolic Pochhammer part as an exact z-series.
pub fn pochhammer_series(geom: &StripGeometry, z_trunc: usize, t_trunc: i64) -> XSeries {
    pochhammer_part(&dual_wave(geom), z_trunc, t_trunc)
}

/// Leading layer as a polynomial-free description, for display.
pub fn leading_layer_string(exp: &HbarExpansion) -> String {
    let l = &exp.layers[0];
    let parts: Vec<String> = l
        .terms
        .iter()
        .map(|(w, a)| {
            let arg = match a {
                PolylogArg::Z => "z".to_string(),
                PolylogArg::Param(v) => format!("{}*z", MultiPoly::var(*v)),
            };
            format!("{w}*Li{}({arg})", l.order)
        })
        .collect();
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C {
        C::new(re, 0.0)
    }

    #[test]
    fn c3_dual_difference() {
        for f in -2..=2 {
            let dw = dual_wave(&StripGeometry::c3(f));
            assert_eq!(dw.denominator, vec![TMono::t_pow(1)]);
            let chk = verify_dual_difference(&dw, 10, 16).unwrap();
            assert!(chk.passed());
        }
    }

    #[test]
    fn conifold_numerator() {
        let dw = dual_wave(&StripGeometry::conifold(0));
        assert_eq!(dw.numerator, vec![TMono::param(1, Var::Alpha(0))]);
        assert!(verify_dual_difference(&dw, 8, 14).unwrap().passed());
    }

    #[test]
    fn wrong_phase_is_caught() {
        let mut dw = dual_wave(&StripGeometry::c3(1));
        dw.phase += 1;
        assert!(matches!(verify_dual_difference(&dw, 4, 8), Err(Error::ResidualNonzero { .. })));
        let mut dw = dual_wave(&StripGeometry::conifold(1));
        dw.numerator[0].t = 3;
        assert!(matches!(verify_dual_difference(&dw, 4, 8), Err(Error::ResidualNonzero { .. })));
    }

    #[test]
    fn layer_weights() {
        let e = omega_dual_expansion(&StripGeometry::c3(0), 6);
        let b = bernoulli(8);
        for (n, l) in e.layers.iter().enumerate() {
            // B_n(1/2)/n! = (2^{1-n} − 1) B_n / n!
            let two = Rat::int(2);
            let f = if n == 0 { two.clone() } else { two.pow(n as u32 - 1).recip().unwrap() };
            let fact: i64 = (1..=n as i64).product();
            let expect = -(&(&(&f - &Rat::ONE) * &b[n]) / &Rat::int(fact));
            assert_eq!(l.terms[0].0, expect, "n={n}");
        }
        // leading layer is −Li₂(z)
        assert_eq!(e.layers[0].power, -1);
        assert_eq!(e.layers[0].terms, vec![(Rat::int(-1), PolylogArg::Z)]);
        // B₁ contributes +½Li₁ before the shift, the shift removes it
        assert_eq!(e.bernoulli_weights[1], Rat::new(-1, 2));
        assert_eq!(e.shift_weights[1], Rat::new(1, 2));
        assert!(e.layers[1].terms[0].0.is_zero());
    }

    #[test]
    fn order_zero_numerically() {
        let e = omega_dual_expansion(&StripGeometry::c3(0), 0);
        let z = c(0.2);
        let h = -1e-3;
        let exact = exact_log_pochhammer(z, h, &[], &[]);
        let lead = e.layer_value(0, z, &[], &[]) / h;
        // no ħ⁰ term survives: the remainder is O(ħ)
        assert!((exact - lead).norm() < 1e-4);
    }

    #[test]
    fn domain_errors() {
        let e = omega_dual_expansion(&StripGeometry::c3(0), 2);
        assert!(matches!(decay_check(&e, c(1.5), -0.1, &[], &[]), Err(Error::ConvergenceDomain(_))));
        assert!(matches!(decay_check(&e, c(0.2), 0.1, &[], &[]), Err(Error::ConvergenceDomain(_))));
    }
}
