//! Strip geometries, their mirror curve, parametrization and saddle potential.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{li2, poly_roots};
use crate::series::{MultiPoly, Rat, Var, MAX_PARAMS};

type C = Complex64;

/// One α_j or β_j.
#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Symbolic,
    Exact(Rat),
    Numeric(C),
}

impl Param {
    pub fn value(&self) -> Option<C> {
        match self {
            Param::Symbolic => None,
            Param::Exact(r) => Some(C::new(r.to_f64(), 0.0)),
            Param::Numeric(c) => Some(*c),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basepoint {
    #[serde(rename = "inf")]
    Infinity,
    #[serde(rename = "1")]
    One,
}

impl fmt::Display for Basepoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basepoint::Infinity => write!(f, "inf"),
            Basepoint::One => write!(f, "1"),
        }
    }
}

/// Strip curve data: r parameters α_j, s parameters β_j and framing f.
///
/// Exact q-series computations always treat α_j, β_j as the indeterminates
/// `a{j}`, `b{j}`; numeric values are only consulted by numeric routines.
#[derive(Clone, Debug, PartialEq)]
pub struct StripGeometry {
    alphas: Vec<Param>,
    betas: Vec<Param>,
    framing: i64,
}

impl StripGeometry {
    pub fn new(alphas: Vec<Param>, betas: Vec<Param>, framing: i64) -> Result<StripGeometry> {
        if alphas.len() > MAX_PARAMS || betas.len() > MAX_PARAMS {
            return Err(Error::InvalidGeometry(format!(
                "at most {MAX_PARAMS} alphas and {MAX_PARAMS} betas are supported"
            )));
        }
        let sym = alphas.iter().chain(&betas).filter(|p| **p == Param::Symbolic).count();
        if sym != 0 && sym != alphas.len() + betas.len() {
            return Err(Error::InvalidGeometry(
                "mixed symbolic and numeric parameters".into(),
            ));
        }
        Ok(StripGeometry {
            alphas,
            betas,
            framing,
        })
    }

    pub fn symbolic(r: usize, s: usize, framing: i64) -> StripGeometry {
        StripGeometry::new(vec![Param::Symbolic; r], vec![Param::Symbolic; s], framing)
            .expect("symbolic geometry is valid")
    }

    pub fn numeric(alphas: &[C], betas: &[C], framing: i64) -> Result<StripGeometry> {
        StripGeometry::new(
            alphas.iter().map(|a| Param::Numeric(*a)).collect(),
            betas.iter().map(|b| Param::Numeric(*b)).collect(),
            framing,
        )
    }

    pub fn c3(framing: i64) -> StripGeometry {
        StripGeometry::symbolic(0, 0, framing)
    }

    pub fn conifold(framing: i64) -> StripGeometry {
        StripGeometry::symbolic(1, 0, framing)
    }

    pub fn r(&self) -> usize {
        self.alphas.len()
    }

    pub fn s(&self) -> usize {
        self.betas.len()
    }

    pub fn framing(&self) -> i64 {
        self.framing
    }

    pub fn alphas(&self) -> &[Param] {
        &self.alphas
    }

    pub fn betas(&self) -> &[Param] {
        &self.betas
    }

    pub fn with_framing(&self, framing: i64) -> StripGeometry {
        StripGeometry {
            framing,
            ..self.clone()
        }
    }

    /// Same shape with every parameter symbolic.
    pub fn to_symbolic(&self) -> StripGeometry {
        StripGeometry::symbolic(self.r(), self.s(), self.framing)
    }

    pub fn is_symbolic(&self) -> bool {
        self.alphas.iter().chain(&self.betas).all(|p| *p == Param::Symbolic)
    }

    /// Numeric values of (α, β); fails for symbolic parameters.
    pub fn values(&self) -> Result<(Vec<C>, Vec<C>)> {
        let get = |ps: &[Param]| -> Result<Vec<C>> {
            ps.iter()
                .map(|p| {
                    p.value()
                        .ok_or_else(|| Error::NeedsNumeric("symbolic parameter has no value".into()))
                })
                .collect()
        };
        Ok((get(&self.alphas)?, get(&self.betas)?))
    }

    pub fn alpha_vars(&self) -> impl Iterator<Item = Var> {
        (0..self.r()).map(Var::Alpha)
    }

    pub fn beta_vars(&self) -> impl Iterator<Item = Var> {
        (0..self.s()).map(Var::Beta)
    }

    /// Short tag such as `c3_1` or `r1s0_-1`.
    pub fn label(&self) -> String {
        match (self.r(), self.s()) {
            (0, 0) => format!("c3_{}", self.framing),
            (1, 0) => format!("conifold_{}", self.framing),
            (r, s) => format!("r{r}s{s}_{}", self.framing),
        }
    }
}

/// Bivariate Laurent polynomial `Σ c_{a,b} X^a Y^b`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassicalCurve {
    terms: BTreeMap<(i64, i64), MultiPoly>,
}

impl ClassicalCurve {
    pub fn zero() -> ClassicalCurve {
        ClassicalCurve::default()
    }

    pub fn monomial(x: i64, y: i64, c: MultiPoly) -> ClassicalCurve {
        let mut out = ClassicalCurve::zero();
        out.add_term(x, y, &c);
        out
    }

    pub fn constant(c: MultiPoly) -> ClassicalCurve {
        ClassicalCurve::monomial(0, 0, c)
    }

    pub fn add_term(&mut self, x: i64, y: i64, c: &MultiPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((x, y)).or_default();
        slot.add_assign(c);
        if slot.is_zero() {
            self.terms.remove(&(x, y));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &MultiPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, x: i64, y: i64) -> MultiPoly {
        self.terms.get(&(x, y)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &ClassicalCurve) -> ClassicalCurve {
        let mut out = self.clone();
        for ((x, y), c) in &o.terms {
            out.add_term(*x, *y, c);
        }
        out
    }

    pub fn neg(&self) -> ClassicalCurve {
        ClassicalCurve {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &ClassicalCurve) -> ClassicalCurve {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &Rat) -> ClassicalCurve {
        let mut out = ClassicalCurve::zero();
        for ((x, y), c) in &self.terms {
            out.add_term(*x, *y, &c.scale(k));
        }
        out
    }

    pub fn mul(&self, o: &ClassicalCurve) -> ClassicalCurve {
        let mut out = ClassicalCurve::zero();
        for ((xa, ya), ca) in &self.terms {
            for ((xb, yb), cb) in &o.terms {
                out.add_term(xa + xb, ya + yb, &ca.mul(cb));
            }
        }
        out
    }

    /// `Y − 1`.
    pub fn y_minus_one() -> ClassicalCurve {
        ClassicalCurve::monomial(0, 1, MultiPoly::one()).add(&ClassicalCurve::constant(MultiPoly::one().neg()))
    }

    /// Exact quotient by `(Y − 1)`, or `None` if it does not divide.
    pub fn div_y_minus_one(&self) -> Option<ClassicalCurve> {
        // Per X-power, synthetic division of the Y-Laurent polynomial from the top.
        let mut out = ClassicalCurve::zero();
        let xs: Vec<i64> = self.terms.keys().map(|k| k.0).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        for x in xs {
            let row: BTreeMap<i64, MultiPoly> = self
                .terms
                .iter()
                .filter(|((a, _), _)| *a == x)
                .map(|((_, b), c)| (*b, c.clone()))
                .collect();
            let lo = *row.keys().next().unwrap();
            let hi = *row.keys().next_back().unwrap();
            // p(Y) = (Y − 1) g(Y): g_{k-1} = p_k + g_k going down
            let mut carry = MultiPoly::zero();
            for k in (lo + 1..=hi).rev() {
                let g = row.get(&k).cloned().unwrap_or_default().add(&carry);
                out.add_term(x, k - 1, &g);
                carry = g;
            }
            // remainder: p_lo − (−g_lo) must vanish
            let rem = row.get(&lo).cloned().unwrap_or_default().add(&carry);
            if !rem.is_zero() {
                return None;
            }
        }
        Some(out)
    }

    pub fn x_degree_range(&self) -> Option<(i64, i64)> {
        let xs = self.terms.keys().map(|k| k.0);
        Some((xs.clone().min()?, xs.max()?))
    }

    pub fn y_degree_range(&self) -> Option<(i64, i64)> {
        let ys = self.terms.keys().map(|k| k.1);
        Some((ys.clone().min()?, ys.max()?))
    }

    pub fn eval(&self, x: C, y: C, alpha: &[C], beta: &[C]) -> C {
        self.terms
            .iter()
            .map(|((a, b), c)| c.eval(alpha, beta) * x.powi(*a as i32) * y.powi(*b as i32))
            .sum()
    }

    /// Ascending coefficients in Y of `Y^{-ymin} · A(X, Y)` at a fixed X.
    pub fn y_polynomial(&self, x: C, alpha: &[C], beta: &[C]) -> (i64, Vec<C>) {
        let (lo, hi) = self.y_degree_range().unwrap_or((0, 0));
        let mut coeffs = vec![C::new(0.0, 0.0); (hi - lo + 1) as usize];
        for ((a, b), c) in &self.terms {
            coeffs[(b - lo) as usize] += c.eval(alpha, beta) * x.powi(*a as i32);
        }
        (lo, coeffs)
    }
}

impl fmt::Display for ClassicalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((x, y), c)) in self.terms.iter().enumerate() {
            let mono = match (x, y) {
                (0, 0) => String::new(),
                _ => {
                    let mut parts = Vec::new();
                    match x {
                        0 => {}
                        1 => parts.push("X".to_string()),
                        k => parts.push(format!("X^{k}")),
                    }
                    match y {
                        0 => {}
                        1 => parts.push("Y".to_string()),
                        k => parts.push(format!("Y^{k}")),
                    }
                    parts.join("*")
                }
            };
            let cs = c.to_string();
            let single = c.len() == 1;
            let neg = single && cs.starts_with('-');
            let body = if neg { cs[1..].to_string() } else { cs };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_empty() {
                if single {
                    write!(f, "{body}")?;
                } else {
                    write!(f, "({body})")?;
                }
            } else if body == "1" {
                write!(f, "{mono}")?;
            } else if single {
                write!(f, "{body}*{mono}")?;
            } else {
                write!(f, "({body})*{mono}")?;
            }
        }
        Ok(())
    }
}

fn one_minus_var_y(v: Var) -> ClassicalCurve {
    ClassicalCurve::constant(MultiPoly::one()).sub(&ClassicalCurve::monomial(0, 1, MultiPoly::var(v)))
}

/// `(1−Y)∏(1−β_jY) + (−1)^f X Y^{1+f} ∏(1−α_jY)`.
pub fn classical_curve(geom: &StripGeometry) -> ClassicalCurve {
    let one = ClassicalCurve::constant(MultiPoly::one());
    let mut left = one.sub(&ClassicalCurve::monomial(0, 1, MultiPoly::one()));
    for v in geom.beta_vars() {
        left = left.mul(&one_minus_var_y(v));
    }
    let f = geom.framing();
    let sign = if f.rem_euclid(2) == 0 { 1 } else { -1 };
    let mut right = ClassicalCurve::monomial(1, 1 + f, MultiPoly::constant(Rat::int(sign)));
    for v in geom.alpha_vars() {
        right = right.mul(&one_minus_var_y(v));
    }
    left.add(&right)
}

/// Distance below which a point counts as sitting on a singular value.
const POLE_TOL: f64 = 1e-13;

/// `x = log[(1−z)∏(1−β_jz)/∏(1−α_jz)] − (f+1) log z + (f+1) iπ`, `y = log z`.
pub fn parametrize(geom: &StripGeometry, z: C) -> Result<(C, C)> {
    let (alpha, beta) = geom.values()?;
    let one = C::new(1.0, 0.0);
    let bad = |w: C| w.norm() < POLE_TOL;
    if bad(z) || bad(one - z) || beta.iter().any(|b| bad(one - b * z)) || alpha.iter().any(|a| bad(one - a * z)) {
        return Err(Error::PoleAtZ(format!("{z}")));
    }
    let mut ratio = one - z;
    for b in &beta {
        ratio *= one - b * z;
    }
    for a in &alpha {
        ratio /= one - a * z;
    }
    let k = (geom.framing() + 1) as f64;
    let y = z.ln();
    let x = ratio.ln() - k * y + C::new(0.0, k * PI);
    Ok((x, y))
}

/// Evaluate the classical curve at `(e^x, e^y)` with the geometry's values.
pub fn curve_residual(geom: &StripGeometry, x: C, y: C) -> Result<C> {
    let (alpha, beta) = geom.values()?;
    Ok(classical_curve(geom).eval(x.exp(), y.exp(), &alpha, &beta))
}

/// `W(z) = −Li₂(z) + Σ Li₂(β_j/z) − Σ Li₂(α_j/z) + (f/2) log²z − (x − iπf) log z`.
#[derive(Clone, Debug)]
pub struct SaddlePotential {
    alpha: Vec<C>,
    beta: Vec<C>,
    framing: i64,
    x: C,
    curve: ClassicalCurve,
}

const NEWTON_CAP: usize = 50;

impl SaddlePotential {
    pub fn x(&self) -> C {
        self.x
    }

    pub fn value(&self, z: C) -> C {
        let l = z.ln();
        let f = self.framing as f64;
        let mut w = -li2(z) + 0.5 * f * l * l - (self.x - C::new(0.0, PI * f)) * l;
        for b in &self.beta {
            w += li2(b / z);
        }
        for a in &self.alpha {
            w -= li2(a / z);
        }
        w
    }

    /// `z ∂W/∂z`.
    pub fn z_dw(&self, z: C) -> C {
        let one = C::new(1.0, 0.0);
        let f = self.framing as f64;
        let mut v = (one - z).ln() + f * z.ln() - (self.x - C::new(0.0, PI * f));
        for b in &self.beta {
            v += (one - b / z).ln();
        }
        for a in &self.alpha {
            v -= (one - a / z).ln();
        }
        v
    }

    /// `d/dz (z ∂W/∂z)`.
    fn z_dw_prime(&self, z: C) -> C {
        let one = C::new(1.0, 0.0);
        let f = self.framing as f64;
        let mut v = -one / (one - z) + f / z;
        for b in &self.beta {
            v += (b / (z * z)) / (one - b / z);
        }
        for a in &self.alpha {
            v -= (a / (z * z)) / (one - a / z);
        }
        v
    }

    /// Residual of the critical-point condition `e^{z∂W} − 1`.
    pub fn critical_residual(&self, z: C) -> C {
        self.z_dw(z).exp() - 1.0
    }

    fn polish(&self, mut z: C) -> Result<C> {
        for _ in 0..NEWTON_CAP {
            let e = self.z_dw(z).exp();
            let g = e - 1.0;
            if g.norm() < 1e-15 {
                return Ok(z);
            }
            let step = g / (e * self.z_dw_prime(z));
            if !step.is_finite() {
                break;
            }
            z -= step;
            if step.norm() < 1e-16 * z.norm().max(1.0) {
                return Ok(z);
            }
        }
        if self.critical_residual(z).norm() < 1e-12 {
            return Ok(z);
        }
        Err(Error::NoConvergence(NEWTON_CAP))
    }

    /// Critical points, one per nonzero Y-root of the curve at `X = e^x`,
    /// via `z = 1/Y` and Newton polishing.
    pub fn critical_points(&self) -> Result<Vec<C>> {
        let (_, coeffs) = self.curve.y_polynomial(self.x.exp(), &self.alpha, &self.beta);
        let roots = poly_roots(&coeffs).ok_or(Error::NoConvergence(1000))?;
        let roots: Vec<C> = roots.into_iter().filter(|r| r.norm() > 1e-300).collect();
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let d = (roots[i] - roots[j]).norm();
                if d < 1e-6 * roots[i].norm().max(1.0) {
                    return Err(Error::CriticalPointCollision(d));
                }
            }
        }
        roots.into_iter().map(|y| self.polish(1.0 / y)).collect()
    }
}

pub fn saddle_potential(geom: &StripGeometry, x: C) -> Result<SaddlePotential> {
    let (alpha, beta) = geom.values()?;
    Ok(SaddlePotential {
        alpha,
        beta,
        framing: geom.framing(),
        x,
        curve: classical_curve(geom),
    })
}
