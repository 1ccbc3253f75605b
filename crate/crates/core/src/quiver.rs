//! Symmetric-quiver form of the closed-form wave functions.
//!
//! A model with nodes `x_i` and symmetric matrix `C` stands for
//! `Σ_d (−t)^{d·C·d} ∏ x_i^{d_i} / (q;q)_{d_i}`.
//! Every finite Pochhammer of the closed form is split into two nodes:
//!
//! `(u;q)_n = Σ_{i,j} (−1)^i q^{i(i−1)/2} u^i · u^j q^{nj} / ((q;q)_i (q;q)_j)`
//! `1/(u;q)_n = Σ_{i,j} (−1)^i q^{i(i−1)/2} (uq^n)^i · u^j / ((q;q)_i (q;q)_j)`
//!
//! so the `i`-node has variable `t^{-1}u` and `C_ii = 1`, the `j`-node has
//! variable `u` and `C_jj = 0`, and the `q^{n·}` factor is a unit coupling
//! to the principal node.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Basepoint, StripGeometry};
use crate::series::{Direction, Monomial, MultiPoly, QLaurent, Rat, TMono, XSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverNode {
    pub label: String,
    pub variable: TMono,
    /// 1 for the principal node only.
    pub x_degree: u8,
    /// Which Pochhammer factor produced the node.
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverModel {
    pub nodes: Vec<QuiverNode>,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverMatrix {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Copy)]
enum Side {
    Numerator,
    Denominator,
}

struct Builder {
    nodes: Vec<QuiverNode>,
    diag: Vec<i64>,
    coupling: Vec<i64>,
}

impl Builder {
    fn push(&mut self, label: String, variable: TMono, c: i64, coupling: i64, source: String) {
        self.nodes.push(QuiverNode {
            label,
            variable,
            x_degree: 0,
            source,
        });
        self.diag.push(c);
        self.coupling.push(coupling);
    }

    fn factor(&mut self, u: TMono, side: Side) {
        let k = (self.nodes.len() - 1) / 2 + 1;
        let (tag, ci) = match side {
            Side::Numerator => ("numerator", 0),
            Side::Denominator => ("denominator", 1),
        };
        let src = format!("{tag} ({u};q)_n");
        self.push(format!("i{k}"), u.mul(TMono::t_pow(-1)), 1, ci, src.clone());
        self.push(format!("j{k}"), u, 0, 1 - ci, src);
    }
}

/// Quiver form of `closed_form_psi` in the ascending-X direction.
pub fn to_quiver(geom: &StripGeometry, bp: Basepoint) -> Result<QuiverModel> {
    let f = geom.framing();
    if bp == Basepoint::One && f < -1 {
        return Err(Error::UnsupportedFraming {
            framing: f,
            basepoint: bp.to_string(),
        });
    }
    // (−1)^{n(f+1)} t^{(f+1)n²} is exactly (−t)^{(f+1)n²}.
    let mut b = Builder {
        nodes: vec![QuiverNode {
            label: "n".into(),
            variable: TMono::t_pow(1),
            x_degree: 1,
            source: "principal X^n/(q;q)_n".into(),
        }],
        diag: vec![f + 1],
        coupling: vec![0],
    };
    let q = TMono::t_pow(2);
    b.factor(q, Side::Numerator);
    b.factor(TMono::t_pow(1), Side::Denominator);
    for v in geom.alpha_vars() {
        b.factor(TMono::param(1, v), Side::Numerator);
    }
    for v in geom.beta_vars() {
        b.factor(TMono::param(1, v), Side::Denominator);
    }
    if bp == Basepoint::One {
        b.factor(q, Side::Numerator);
        b.factor(TMono::t_pow(4), Side::Denominator);
    }
    let m = b.nodes.len();
    let mut matrix = vec![vec![0i64; m]; m];
    for i in 0..m {
        matrix[i][i] = b.diag[i];
        if i > 0 {
            matrix[0][i] = b.coupling[i];
            matrix[i][0] = b.coupling[i];
        }
    }
    Ok(QuiverModel { nodes: b.nodes, matrix })
}

pub fn quiver_matrix(model: &QuiverModel) -> QuiverMatrix {
    QuiverMatrix {
        labels: model.nodes.iter().map(|n| n.label.clone()).collect(),
        matrix: model.matrix.clone(),
    }
}

impl QuiverModel {
    pub fn principal(&self) -> Option<usize> {
        self.nodes.iter().position(|n| n.x_degree == 1)
    }

    pub fn is_symmetric(&self) -> bool {
        let m = self.matrix.len();
        (0..m).all(|i| self.matrix[i].len() == m && (0..m).all(|j| self.matrix[i][j] == self.matrix[j][i]))
    }

    /// Each non-principal degree step must raise the t-exponent by at least 1.
    fn check_terminating(&self, p: usize) -> Result<()> {
        for (i, node) in self.nodes.iter().enumerate() {
            if i == p {
                continue;
            }
            let c = self.matrix[i][i];
            if c < 0 || c + node.variable.t < 1 {
                return Err(Error::NonTerminating(format!(
                    "node {} has t-order {} with C_ii = {c}",
                    node.label, node.variable.t
                )));
            }
            if let Some(j) = (0..self.nodes.len()).find(|&j| j != i && self.matrix[i][j] < 0) {
                return Err(Error::NonTerminating(format!(
                    "negative coupling between {} and {}",
                    node.label, self.nodes[j].label
                )));
            }
        }
        Ok(())
    }
}

/// `1/(q;q)_d` as integer coefficients of `t^0..t^{len-1}`.
fn inv_qq_coeffs(d: usize, len: usize) -> Vec<i128> {
    let mut s = vec![0i128; len];
    if len == 0 {
        return s;
    }
    s[0] = 1;
    for k in 1..=d {
        // divide by (1 − t^{2k})
        let step = 2 * k;
        for e in step..len {
            s[e] += s[e - step];
        }
    }
    s
}

fn mul_trunc(a: &[i128], b: &[i128], len: usize) -> Vec<i128> {
    let mut out = vec![0i128; len];
    for (i, x) in a.iter().enumerate().take(len) {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

struct Lattice<'a> {
    model: &'a QuiverModel,
    order: Vec<usize>,
    t_trunc: i64,
    tables: Vec<Vec<i128>>,
    acc: BTreeMap<i64, MultiPoly>,
}

impl Lattice<'_> {
    fn table(&self, d: usize, len: usize) -> Vec<i128> {
        // below t^len, 1/(q;q)_d no longer depends on d once 2d ≥ len
        self.tables[d.min(self.tables.len() - 1)][..len].to_vec()
    }

    fn walk(&mut self, pos: usize, degs: &mut Vec<i64>, e: i64, odd: bool, mono: Monomial, series: Vec<i128>) {
        if pos == self.order.len() {
            let sign = if odd { -1 } else { 1 };
            for (k, c) in series.iter().enumerate() {
                if *c != 0 {
                    let c = i64::try_from(*c).expect("lattice coefficient overflow");
                    self.acc
                        .entry(e + k as i64)
                        .or_default()
                        .add_term(mono, &Rat::int(sign * c));
                }
            }
            return;
        }
        let i = self.order[pos];
        let node = &self.model.nodes[i];
        let row = &self.model.matrix[i];
        // unvisited nodes still have degree 0
        let cross: i64 = (0..degs.len()).filter(|&j| j != i).map(|j| row[j] * degs[j]).sum();
        let mut d = 0usize;
        loop {
            let di = d as i64;
            let ei = e + row[i] * di * di + 2 * cross * di + node.variable.t * di;
            if ei >= self.t_trunc {
                break;
            }
            let len = (self.t_trunc - ei) as usize;
            let next = if d == 0 {
                series[..len.min(series.len())].to_vec()
            } else {
                let tab = self.table(d, len);
                mul_trunc(&series, &tab, len)
            };
            let flip = ((row[i] * di).rem_euclid(2) == 1) ^ (node.variable.negative && d % 2 == 1);
            degs[i] = di;
            let m = mono.mul(&node.variable.mono.pow(d as u32));
            self.walk(pos + 1, degs, ei, odd ^ flip, m, next);
            degs[i] = 0;
            d += 1;
        }
    }
}

/// Lattice sum of the model with X-degree `≤ n_max`, exact below `t^{t_trunc}`.
pub fn quiver_eval(model: &QuiverModel, n_max: usize, t_trunc: i64) -> Result<XSeries> {
    let p = model
        .principal()
        .ok_or_else(|| Error::InvalidGeometry("quiver has no principal node".into()))?;
    model.check_terminating(p)?;
    let order: Vec<usize> = (0..model.nodes.len()).filter(|&i| i != p).collect();
    let cnn = model.matrix[p][p];
    let pv = model.nodes[p].variable;
    let coeffs: Vec<QLaurent> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..=n_max)
            .map(|n| {
                let order = order.clone();
                scope.spawn(move || {
                    let ni = n as i64;
                    let e0 = cnn * ni * ni + pv.t * ni;
                    if e0 >= t_trunc {
                        return QLaurent::truncated_zero(t_trunc);
                    }
                    let len = (t_trunc - e0) as usize;
                    let tables: Vec<Vec<i128>> = (0..=len).map(|d| inv_qq_coeffs(d, len)).collect();
                    let mut lat = Lattice {
                        model,
                        order,
                        t_trunc,
                        tables,
                        acc: BTreeMap::new(),
                    };
                    let mut degs = vec![0i64; model.nodes.len()];
                    degs[p] = ni;
                    let odd = ((cnn * ni).rem_euclid(2) == 1) ^ (pv.negative && n % 2 == 1);
                    let start = lat.table(n, len);
                    lat.walk(0, &mut degs, e0, odd, pv.mono.pow(n as u32), start);
                    QLaurent::from_terms(lat.acc, Some(t_trunc))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("lattice worker")).collect()
    });
    Ok(XSeries::new(Direction::AscendingX, coeffs))
}
