//! Truncated series in the expansion monomial X (or X^{-1}) with
//! `QLaurent` coefficients.

use serde::{Deserialize, Serialize};

use super::qlaurent::QLaurent;
use super::rat::Rat;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// `Σ c_n X^n`
    AscendingX,
    /// `Σ c_n X^{-n}`
    AscendingXInverse,
}

impl Direction {
    /// Sign of the X-exponent step between consecutive coefficients.
    pub fn step(self) -> i64 {
        match self {
            Direction::AscendingX => 1,
            Direction::AscendingXInverse => -1,
        }
    }
}

/// `coeffs[i]` multiplies `X^{lead + step·i}`; indices `> N` are unknown.
/// Wave functions have `lead = 0`, operator images may start elsewhere.
#[derive(Clone, Debug, PartialEq)]
pub struct XSeries {
    pub direction: Direction,
    pub lead: i64,
    pub coeffs: Vec<QLaurent>,
}

impl XSeries {
    pub fn new(direction: Direction, coeffs: Vec<QLaurent>) -> XSeries {
        XSeries {
            direction,
            lead: 0,
            coeffs,
        }
    }

    pub fn zero(direction: Direction, n: usize) -> XSeries {
        XSeries::new(direction, vec![QLaurent::zero(); n + 1])
    }

    pub fn one(direction: Direction, n: usize) -> XSeries {
        let mut s = XSeries::zero(direction, n);
        s.coeffs[0] = QLaurent::one();
        s
    }

    /// Truncation order N in the expansion monomial.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// X-exponent carried by `coeffs[i]`.
    pub fn exponent(&self, i: usize) -> i64 {
        self.lead + self.direction.step() * i as i64
    }

    /// Coefficient of `X^e` if it lies in the known window.
    pub fn coeff_at(&self, e: i64) -> Option<&QLaurent> {
        let d = (e - self.lead) * self.direction.step();
        if d < 0 {
            return None;
        }
        self.coeffs.get(d as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QLaurent::is_zero)
    }

    fn check_compatible(&self, o: &XSeries) -> Result<()> {
        if self.direction != o.direction {
            return Err(Error::DirectionMismatch);
        }
        if self.lead != o.lead {
            return Err(Error::DirectionMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &XSeries) -> Result<XSeries> {
        self.check_compatible(o)?;
        let n = self.coeffs.len().min(o.coeffs.len());
        Ok(XSeries {
            direction: self.direction,
            lead: self.lead,
            coeffs: (0..n).map(|i| self.coeffs[i].add(&o.coeffs[i])).collect(),
        })
    }

    pub fn sub(&self, o: &XSeries) -> Result<XSeries> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> XSeries {
        XSeries {
            direction: self.direction,
            lead: self.lead,
            coeffs: self.coeffs.iter().map(QLaurent::neg).collect(),
        }
    }

    pub fn scale(&self, c: &QLaurent) -> XSeries {
        XSeries {
            direction: self.direction,
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, o: &XSeries) -> Result<XSeries> {
        if self.direction != o.direction {
            return Err(Error::DirectionMismatch);
        }
        let n = self.coeffs.len().min(o.coeffs.len());
        let mut coeffs = vec![QLaurent::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_exact_zero() {
                continue;
            }
            for j in 0..n - i {
                if o.coeffs[j].is_exact_zero() {
                    continue;
                }
                coeffs[i + j].add_mul_shifted(&self.coeffs[i], &o.coeffs[j], 0);
            }
        }
        Ok(XSeries {
            direction: self.direction,
            lead: self.lead + o.lead,
            coeffs,
        })
    }

    /// Restrict every coefficient to exponents `< t`.
    pub fn with_trunc(&self, t: i64) -> XSeries {
        XSeries {
            direction: self.direction,
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|c| c.with_trunc(t)).collect(),
        }
    }

    /// Keep only the first `n + 1` coefficients.
    pub fn truncate_order(&self, n: usize) -> XSeries {
        XSeries {
            direction: self.direction,
            lead: self.lead,
            coeffs: self.coeffs.iter().take(n + 1).cloned().collect(),
        }
    }

    /// Multiplicative inverse of a series with unit constant coefficient.
    pub fn inv(&self) -> Result<XSeries> {
        if self.lead != 0 || !self.coeffs.first().is_some_and(|c| *c == QLaurent::one()) {
            return Err(Error::NonUnitConstant);
        }
        let n = self.coeffs.len();
        let mut out: Vec<QLaurent> = Vec::with_capacity(n);
        out.push(QLaurent::one());
        for k in 1..n {
            let mut acc = QLaurent::zero();
            for j in 1..=k {
                acc = acc.add(&self.coeffs[j].mul(&out[k - j]));
            }
            out.push(acc.neg());
        }
        Ok(XSeries::new(self.direction, out))
    }

    /// `exp(g)` for `g` without constant term (rational coefficients allowed).
    pub fn exp(&self) -> Result<XSeries> {
        if self.lead != 0 || !self.coeffs.first().is_none_or(QLaurent::is_exact_zero) {
            return Err(Error::NonUnitConstant);
        }
        let n = self.coeffs.len();
        let mut h: Vec<QLaurent> = Vec::with_capacity(n);
        h.push(QLaurent::one());
        for m in 1..n {
            let mut acc = QLaurent::zero();
            for k in 1..=m {
                if self.coeffs[k].is_exact_zero() {
                    continue;
                }
                acc.add_mul_shifted(&self.coeffs[k].scale(&Rat::int(k as i64)), &h[m - k], 0);
            }
            h.push(acc.scale(&Rat::new(1, m as i64)));
        }
        Ok(XSeries::new(self.direction, h))
    }

    /// `log(self)` for a series with unit constant coefficient.
    pub fn log(&self) -> Result<XSeries> {
        let inv = self.inv()?;
        let n = self.coeffs.len();
        // log f = ∫ f'/f: m·L_m = Σ_k k f_k (1/f)_{m-k}
        let mut out = vec![QLaurent::zero(); n];
        for m in 1..n {
            let mut acc = QLaurent::zero();
            for k in 1..=m {
                if self.coeffs[k].is_exact_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[k].mul(&inv.coeffs[m - k]).scale(&Rat::int(k as i64)));
            }
            out[m] = acc.scale(&Rat::new(1, m as i64));
        }
        Ok(XSeries::new(self.direction, out))
    }

    /// Multiply the coefficient of the i-th power by `t^{k·i}`
    /// (substitution `X → t^k X` in the expansion variable).
    pub fn rescale_t(&self, k: i64) -> XSeries {
        XSeries {
            direction: self.direction,
            lead: self.lead,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.shift(k * i as i64))
                .collect(),
        }
    }

    /// First index whose coefficient is provably nonzero.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Coefficientwise equality to the shared truncation in both X and t.
    pub fn eq_to_order(&self, o: &XSeries) -> Result<bool> {
        Ok(self.sub(o)?.is_zero())
    }
}
