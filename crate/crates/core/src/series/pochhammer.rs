//! Finite and infinite q-Pochhammer symbols in t = q^{1/2}.

use std::fmt;

use serde::Serialize;

use super::multipoly::{Monomial, Var};
use super::qlaurent::QLaurent;
use super::rat::Rat;
use super::xseries::{Direction, XSeries};
use crate::error::{Error, Result};

/// A monomial `sign · t^t · m` in t and the strip parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TMono {
    pub negative: bool,
    pub t: i64,
    pub mono: Monomial,
}

impl TMono {
    pub fn new(t: i64, mono: Monomial) -> TMono {
        TMono {
            negative: false,
            t,
            mono,
        }
    }

    pub fn t_pow(t: i64) -> TMono {
        TMono::new(t, Monomial::ONE)
    }

    pub fn param(t: i64, v: Var) -> TMono {
        TMono::new(t, Monomial::var(v))
    }

    pub fn neg(self) -> TMono {
        TMono {
            negative: !self.negative,
            ..self
        }
    }

    pub fn mul(self, o: TMono) -> TMono {
        TMono {
            negative: self.negative ^ o.negative,
            t: self.t + o.t,
            mono: self.mono.mul(&o.mono),
        }
    }

    pub fn pow(self, k: u32) -> TMono {
        TMono {
            negative: self.negative && k % 2 == 1,
            t: self.t * k as i64,
            mono: self.mono.pow(k),
        }
    }

    /// Multiply by `q^k = t^{2k}`.
    pub fn q_shift(self, k: i64) -> TMono {
        TMono {
            t: self.t + 2 * k,
            ..self
        }
    }

    pub fn sign(&self) -> Rat {
        if self.negative {
            Rat::int(-1)
        } else {
            Rat::ONE
        }
    }

    pub fn to_qlaurent(&self) -> QLaurent {
        QLaurent::term(self.t, self.mono, self.sign())
    }

    pub fn is_unit_monomial(&self) -> bool {
        self.mono.is_one()
    }
}

impl fmt::Display for TMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        let m = if self.mono.is_one() {
            None
        } else {
            Some(self.mono.to_string())
        };
        match (self.t, m) {
            (0, None) => write!(f, "1"),
            (0, Some(m)) => write!(f, "{m}"),
            (1, None) => write!(f, "t"),
            (k, None) => write!(f, "t^{k}"),
            (1, Some(m)) => write!(f, "t*{m}"),
            (k, Some(m)) => write!(f, "t^{k}*{m}"),
        }
    }
}

impl Serialize for TMono {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `(u;q)_n = ∏_{k<n} (1 − u q^k)`, exact.
pub fn poch_finite(u: TMono, n: usize) -> QLaurent {
    let mut acc = QLaurent::one();
    for k in 0..n {
        let factor = QLaurent::one().sub(&u.q_shift(k as i64).to_qlaurent());
        acc = acc.mul(&factor);
    }
    acc
}

/// `(u;q)_∞` known below `t^trunc`; needs `u` of strictly positive t-order.
pub fn poch_inf(u: TMono, trunc: i64) -> Result<QLaurent> {
    if u.t <= 0 {
        return Err(Error::Divergent(format!(
            "({u};q)_inf has argument of t-order {} <= 0",
            u.t
        )));
    }
    let mut acc = QLaurent::one().with_trunc(trunc);
    let mut k = 0;
    while u.t + 2 * k < trunc {
        let factor = QLaurent::one().sub(&u.q_shift(k).to_qlaurent());
        acc = acc.mul(&factor);
        k += 1;
    }
    Ok(acc)
}

/// `1/(q;q)_m` known below `t^trunc`.
pub fn inv_qq(m: usize, trunc: i64) -> QLaurent {
    poch_finite(TMono::t_pow(2), m)
        .inv(trunc)
        .expect("(q;q)_m has unit constant term")
}

/// Euler expansion of `(u·X;q)_∞ = Σ_m (−1)^m t^{m(m−1)} u^m X^m / (q;q)_m`
/// to X-order `n`, coefficients known below `t^trunc`.
pub fn euler_poch(u: TMono, n: usize, trunc: i64) -> XSeries {
    let coeffs = (0..=n)
        .map(|m| {
            let mi = m as i64;
            let num = u.pow(m as u32);
            let num = TMono {
                t: num.t + mi * (mi - 1),
                negative: num.negative ^ (m % 2 == 1),
                ..num
            };
            num.to_qlaurent().mul(&inv_qq(m, trunc - num.t))
        })
        .collect();
    XSeries::new(Direction::AscendingX, coeffs)
}

/// Euler expansion of `1/(u·X;q)_∞ = Σ_m u^m X^m / (q;q)_m`.
pub fn euler_poch_inv(u: TMono, n: usize, trunc: i64) -> XSeries {
    let coeffs = (0..=n)
        .map(|m| {
            let num = u.pow(m as u32);
            num.to_qlaurent().mul(&inv_qq(m, trunc - num.t))
        })
        .collect();
    XSeries::new(Direction::AscendingX, coeffs)
}

/// Exact product `∏_{k<K} (1 − u q^k X)` as an X-series of order `n`.
pub fn poch_product_x(u: TMono, k_max: usize, n: usize) -> XSeries {
    let mut acc = XSeries::one(Direction::AscendingX, n);
    for k in 0..k_max {
        let mut f = XSeries::one(Direction::AscendingX, n);
        if n >= 1 {
            f.coeffs[1] = u.q_shift(k as i64).to_qlaurent().neg();
        }
        acc = acc.mul(&f).expect("same direction");
    }
    acc
}

/// Helper for tests and callers: polynomial `1 − p`.
pub fn one_minus(p: &QLaurent) -> QLaurent {
    QLaurent::one().sub(p)
}
