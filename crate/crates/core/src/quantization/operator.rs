//! Normal-ordered q-difference operators `Σ c_{a,b} X^a σ^b`, `σX = qXσ`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::series::{Direction, QLaurent, XSeries};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct QOperator {
    terms: BTreeMap<(u32, i64), QLaurent>,
}

impl QOperator {
    pub fn zero() -> QOperator {
        QOperator::default()
    }

    pub fn term(a: u32, b: i64, c: QLaurent) -> QOperator {
        let mut op = QOperator::zero();
        op.add_term(a, b, &c);
        op
    }

    pub fn scalar(c: QLaurent) -> QOperator {
        QOperator::term(0, 0, c)
    }

    pub fn one() -> QOperator {
        QOperator::scalar(QLaurent::one())
    }

    /// `X^a`.
    pub fn x_pow(a: u32) -> QOperator {
        QOperator::term(a, 0, QLaurent::one())
    }

    /// `σ^b`.
    pub fn shift(b: i64) -> QOperator {
        QOperator::term(0, b, QLaurent::one())
    }

    fn add_term(&mut self, a: u32, b: i64, c: &QLaurent) {
        if c.is_exact_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_default();
        *slot = slot.add(c);
        if slot.is_exact_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, i64, &QLaurent)> {
        self.terms.iter().map(|((a, b), c)| (*a, *b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &QOperator) -> QOperator {
        let mut out = self.clone();
        for ((a, b), c) in &o.terms {
            out.add_term(*a, *b, c);
        }
        out
    }

    pub fn neg(&self) -> QOperator {
        QOperator {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &QOperator) -> QOperator {
        self.add(&o.neg())
    }

    /// Product with re-normal-ordering `σ^b X^c = q^{bc} X^c σ^b`.
    pub fn mul(&self, o: &QOperator) -> QOperator {
        let mut out = QOperator::zero();
        for ((a, b), c1) in &self.terms {
            for ((c, d), c2) in &o.terms {
                let coeff = c1.mul(c2).shift(2 * b * (*c as i64));
                out.add_term(a + c, b + d, &coeff);
            }
        }
        out
    }

    pub fn x_range(&self) -> Option<(u32, u32)> {
        let a = self.terms.keys().map(|k| k.0);
        Some((a.clone().min()?, a.max()?))
    }

    /// `S_a(σ)` evaluated at `σ = q^m`: `Σ_b c_{a,b} t^{2bm}`.
    pub fn symbol_at(&self, a: u32, m: i64) -> QLaurent {
        let mut acc = QLaurent::zero();
        for ((aa, b), c) in &self.terms {
            if *aa == a {
                acc = acc.add(&c.shift(2 * b * m));
            }
        }
        acc
    }

    /// Apply to a series in either direction. Output keeps `N + 1`
    /// coefficients, each built only from known input coefficients.
    pub fn apply(&self, psi: &XSeries) -> Result<XSeries> {
        let n = psi.order();
        let Some((amin, amax)) = self.x_range() else {
            return Ok(XSeries {
                direction: psi.direction,
                lead: psi.lead,
                coeffs: vec![QLaurent::zero(); n + 1],
            });
        };
        let lead = match psi.direction {
            Direction::AscendingX => psi.lead + amin as i64,
            Direction::AscendingXInverse => psi.lead + amax as i64,
        };
        let mut out = XSeries {
            direction: psi.direction,
            lead,
            coeffs: vec![QLaurent::zero(); n + 1],
        };
        for ((a, b), c) in &self.terms {
            // input index offset relative to output index
            let off = match psi.direction {
                Direction::AscendingX => (*a - amin) as usize,
                Direction::AscendingXInverse => (amax - *a) as usize,
            };
            for j in off..=n {
                let i = j - off;
                let ci = &psi.coeffs[i];
                if ci.is_exact_zero() {
                    continue;
                }
                let e = psi.exponent(i);
                out.coeffs[j].add_mul_shifted(c, ci, 2 * b * e);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for QOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                let x = match a {
                    0 => String::new(),
                    1 => "X*".to_string(),
                    k => format!("X^{k}*"),
                };
                let s = match b {
                    0 => String::new(),
                    1 => "*S".to_string(),
                    k => format!("*S^{k}"),
                };
                format!("{x}({c}){s}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
