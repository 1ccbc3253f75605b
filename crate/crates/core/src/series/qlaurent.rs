//! Truncated Laurent series in t = q^{1/2} with `MultiPoly` coefficients.

use std::collections::BTreeMap;
use std::fmt;

use super::multipoly::{Monomial, MultiPoly};
use super::rat::Rat;
use crate::error::{Error, Result};

/// `Σ_k p_k t^k`. When `trunc` is `Some(T)` every exponent `≥ T` is unknown;
/// otherwise the value is an exact Laurent polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QLaurent {
    terms: BTreeMap<i64, MultiPoly>,
    trunc: Option<i64>,
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl QLaurent {
    pub fn zero() -> QLaurent {
        QLaurent::default()
    }

    pub fn one() -> QLaurent {
        QLaurent::constant(Rat::ONE)
    }

    pub fn constant(c: Rat) -> QLaurent {
        QLaurent::monomial(0, MultiPoly::constant(c))
    }

    pub fn from_poly(p: MultiPoly) -> QLaurent {
        QLaurent::monomial(0, p)
    }

    /// `p · t^k`.
    pub fn monomial(k: i64, p: MultiPoly) -> QLaurent {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(k, p);
        }
        QLaurent { terms, trunc: None }
    }

    /// `c · m · t^k`.
    pub fn term(k: i64, m: Monomial, c: Rat) -> QLaurent {
        QLaurent::monomial(k, MultiPoly::term(m, c))
    }

    pub fn t_pow(k: i64) -> QLaurent {
        QLaurent::term(k, Monomial::ONE, Rat::ONE)
    }

    /// The unknown quantity `O(t^T)`.
    pub fn truncated_zero(trunc: i64) -> QLaurent {
        QLaurent {
            terms: BTreeMap::new(),
            trunc: Some(trunc),
        }
    }

    /// Build from raw parts, dropping zero and out-of-range terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, MultiPoly)>, trunc: Option<i64>) -> QLaurent {
        let mut out = QLaurent {
            terms: BTreeMap::new(),
            trunc,
        };
        for (k, p) in terms {
            out.add_at(k, &p);
        }
        out
    }

    pub fn trunc(&self) -> Option<i64> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    /// True when no known coefficient is nonzero (exact zero or `O(t^T)`).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.trunc.is_none()
    }

    /// Lowest stored exponent; for a truncated zero its truncation;
    /// `None` for the exact zero.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied().or(self.trunc)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, k: i64) -> MultiPoly {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &MultiPoly)> {
        self.terms.iter().map(|(k, p)| (*k, p))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.values().map(MultiPoly::len).sum()
    }

    fn in_range(&self, k: i64) -> bool {
        self.trunc.is_none_or(|t| k < t)
    }

    fn add_at(&mut self, k: i64, p: &MultiPoly) {
        if p.is_zero() || !self.in_range(k) {
            return;
        }
        let slot = self.terms.entry(k).or_default();
        slot.add_assign(p);
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// Restrict to exponents `< t` (keeps the tighter truncation).
    pub fn with_trunc(&self, t: i64) -> QLaurent {
        let trunc = min_opt(self.trunc, Some(t));
        let cut = trunc.unwrap();
        QLaurent {
            terms: self
                .terms
                .range(..cut)
                .map(|(k, p)| (*k, p.clone()))
                .collect(),
            trunc,
        }
    }

    pub fn add(&self, o: &QLaurent) -> QLaurent {
        let trunc = min_opt(self.trunc, o.trunc);
        let mut out = QLaurent {
            terms: BTreeMap::new(),
            trunc,
        };
        for (k, p) in self.terms.iter().chain(o.terms.iter()) {
            out.add_at(*k, p);
        }
        out
    }

    pub fn sub(&self, o: &QLaurent) -> QLaurent {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(k, p)| (*k, p.neg())).collect(),
            trunc: self.trunc,
        }
    }

    pub fn scale(&self, c: &Rat) -> QLaurent {
        if c.is_zero() {
            return QLaurent::zero();
        }
        QLaurent {
            terms: self.terms.iter().map(|(k, p)| (*k, p.scale(c))).collect(),
            trunc: self.trunc,
        }
    }

    pub fn scale_poly(&self, p: &MultiPoly) -> QLaurent {
        self.mul(&QLaurent::from_poly(p.clone()))
    }

    /// Multiply by `t^k` (exact, truncation shifts along).
    pub fn shift(&self, k: i64) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(e, p)| (e + k, p.clone())).collect(),
            trunc: self.trunc.map(|t| t + k),
        }
    }

    /// Truncation of a product, from each factor's truncation and valuation.
    fn product_trunc(&self, o: &QLaurent) -> Option<i64> {
        if self.is_exact_zero() || o.is_exact_zero() {
            return None;
        }
        let a = self.trunc.map(|t| t + o.valuation().unwrap());
        let b = o.trunc.map(|t| t + self.valuation().unwrap());
        min_opt(a, b)
    }

    pub fn mul(&self, o: &QLaurent) -> QLaurent {
        let trunc = self.product_trunc(o);
        let mut levels: BTreeMap<i64, MultiPoly> = BTreeMap::new();
        for (ka, pa) in &self.terms {
            for (kb, pb) in &o.terms {
                let k = ka + kb;
                if trunc.is_some_and(|t| k >= t) {
                    // Exponents only grow along `kb`.
                    break;
                }
                pa.mul_acc(pb, levels.entry(k).or_default());
            }
        }
        levels.retain(|_, p| !p.is_zero());
        QLaurent {
            terms: levels,
            trunc,
        }
    }

    /// `self += t^k · a · b`, in place.
    pub fn add_mul_shifted(&mut self, a: &QLaurent, b: &QLaurent, k: i64) {
        if a.is_exact_zero() || b.is_exact_zero() {
            return;
        }
        let trunc = min_opt(self.trunc, a.product_trunc(b).map(|t| t + k));
        if let Some(t) = trunc {
            let _ = self.terms.split_off(&t);
        }
        self.trunc = trunc;
        for (ka, pa) in &a.terms {
            for (kb, pb) in &b.terms {
                let e = ka + kb + k;
                if trunc.is_some_and(|t| e >= t) {
                    break;
                }
                pa.mul_acc(pb, self.terms.entry(e).or_default());
            }
        }
        self.terms.retain(|_, p| !p.is_zero());
    }

    pub fn pow(&self, e: u32) -> QLaurent {
        let mut acc = QLaurent::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse known below `min(trunc, T_a − 2v)`.
    /// The lowest term must be a nonzero rational constant times `t^v`.
    pub fn inv(&self, trunc: i64) -> Result<QLaurent> {
        let (&v, lead) = self
            .terms
            .iter()
            .next()
            .ok_or_else(|| Error::NotInvertible("zero or fully truncated series".into()))?;
        let c = lead
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| Error::NotInvertible(format!("leading coefficient {lead} is not a rational constant")))?;
        let cinv = c.recip().unwrap();
        if self.trunc.is_none() && self.terms.len() == 1 {
            return Ok(QLaurent::constant(cinv).shift(-v));
        }
        let t_out = min_opt(Some(trunc), self.trunc.map(|t| t - 2 * v)).unwrap();
        let len = t_out + v;
        let mut out = QLaurent::truncated_zero(t_out);
        if len <= 0 {
            return Ok(out);
        }
        let len = len as usize;
        let a: Vec<MultiPoly> = (0..len).map(|j| self.coeff(v + j as i64)).collect();
        let mut b: Vec<MultiPoly> = Vec::with_capacity(len);
        b.push(MultiPoly::constant(cinv.clone()));
        let neg_cinv = -&cinv;
        for k in 1..len {
            let mut acc = MultiPoly::zero();
            for j in 1..=k {
                if !a[j].is_zero() && !b[k - j].is_zero() {
                    a[j].mul_acc(&b[k - j], &mut acc);
                }
            }
            b.push(acc.scale(&neg_cinv));
        }
        for (k, p) in b.into_iter().enumerate() {
            out.add_at(k as i64 - v, &p);
        }
        Ok(out)
    }

    /// Substitute `t → 1`; only meaningful for exact values.
    pub fn at_t_one(&self) -> Result<MultiPoly> {
        if self.trunc.is_some() {
            return Err(Error::TruncatedCoefficient);
        }
        let mut acc = MultiPoly::zero();
        for p in self.terms.values() {
            acc.add_assign(p);
        }
        Ok(acc)
    }

    /// Adams operation ψ_k: `t → t^k` and every parameter raised to the k-th power.
    pub fn adams(&self, k: u32) -> QLaurent {
        let ki = k as i64;
        QLaurent {
            terms: self.terms.iter().map(|(e, p)| (e * ki, p.adams(k))).collect(),
            trunc: self.trunc.map(|t| t * ki),
        }
    }

    /// Equality where both are known, i.e. below the shared truncation.
    pub fn eq_to_order(&self, o: &QLaurent) -> bool {
        self.sub(o).is_zero()
    }

    /// Lowest exponent at which `self` and `o` provably differ.
    pub fn first_difference(&self, o: &QLaurent) -> Option<(i64, MultiPoly)> {
        self.sub(o).terms.into_iter().next()
    }

    /// Every rational coefficient is an integer.
    pub fn all_integer(&self) -> bool {
        self.terms.values().all(MultiPoly::all_integer)
    }
}

fn needs_parens(p: &MultiPoly) -> bool {
    p.len() > 1
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, p) in &self.terms {
            let (neg, body) = if !needs_parens(p) && p.to_string().starts_with('-') {
                (true, p.neg())
            } else {
                (false, p.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let s = body.to_string();
            if *k == 0 {
                if needs_parens(&body) && self.terms.len() > 1 {
                    write!(f, "({s})")?;
                } else {
                    write!(f, "{s}")?;
                }
            } else if needs_parens(&body) {
                write!(f, "({s})*t^{k}")?;
            } else if s == "1" {
                write!(f, "t^{k}")?;
            } else {
                write!(f, "{s}*t^{k}")?;
            }
        }
        if let Some(t) = self.trunc {
            if first {
                write!(f, "O(t^{t})")?;
            } else {
                write!(f, " + O(t^{t})")?;
            }
        } else if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::multipoly::Var;

    fn t(k: i64) -> QLaurent {
        QLaurent::t_pow(k)
    }
    fn one() -> QLaurent {
        QLaurent::one()
    }
    fn a() -> QLaurent {
        QLaurent::from_poly(MultiPoly::var(Var::Alpha(0)))
    }
    fn b() -> QLaurent {
        QLaurent::from_poly(MultiPoly::var(Var::Beta(0)))
    }

    #[test]
    fn difference_of_squares() {
        let p = one().sub(&t(1)).mul(&one().add(&t(1)));
        assert_eq!(p, one().sub(&t(2)));
        assert!(p.is_exact());
    }

    #[test]
    fn identity_product() {
        let u = t(-2).add(&a().mul(&t(3))).with_trunc(7);
        assert_eq!(u.mul(&one()), u);
    }

    #[test]
    fn two_parameter_expansion() {
        let lhs = one().sub(&t(1).mul(&a())).mul(&one().sub(&t(1).mul(&b())));
        let rhs = one()
            .sub(&t(1).mul(&a().add(&b())))
            .add(&t(2).mul(&a()).mul(&b()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn geometric_inverse() {
        let inv = one().sub(&t(1)).inv(4).unwrap();
        let expect = one().add(&t(1)).add(&t(2)).add(&t(3)).with_trunc(4);
        assert_eq!(inv, expect);
        assert_eq!(one().inv(4).unwrap(), one());
    }

    #[test]
    fn inverse_matches_linear_solve() {
        // (1-t)(1-t^2) = 1 - t - t^2 + t^3; solve b·a = 1 for b_0..b_3 by hand:
        // b0 = 1, b1 = b0 = 1, b2 = b1 + b0 = 2, b3 = b2 + b1 - b0 = 2.
        let p = one().sub(&t(1)).mul(&one().sub(&t(2)));
        let inv = p.inv(4).unwrap();
        let expect = QLaurent::from_terms(
            [(0, 1), (1, 1), (2, 2), (3, 2)]
                .into_iter()
                .map(|(k, c)| (k, MultiPoly::constant(Rat::int(c)))),
            Some(4),
        );
        assert_eq!(inv, expect);
    }

    #[test]
    fn non_invertible() {
        assert!(matches!(a().add(&t(1)).inv(4), Err(Error::NotInvertible(_))));
        assert!(matches!(QLaurent::zero().inv(4), Err(Error::NotInvertible(_))));
        assert!(matches!(
            QLaurent::truncated_zero(3).inv(4),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn truncation_of_products() {
        // t^2 (1 + O(t^3)) known below t^5
        let x = one().add(&t(1)).with_trunc(3);
        let y = t(2);
        assert_eq!(x.mul(&y).trunc(), Some(5));
        // (t + O(t^4)) (t^-1 + O(t^2)) known below min(4-1, 2+1) = 3
        let u = t(1).with_trunc(4);
        let w = t(-1).with_trunc(2);
        assert_eq!(u.mul(&w).trunc(), Some(3));
        assert_eq!(u.mul(&w), one().with_trunc(3));
        // exact zero annihilates truncation
        assert!(u.mul(&QLaurent::zero()).is_exact_zero());
    }

    #[test]
    fn inverse_of_shifted_truncated() {
        // a = t^-1 (1 - t) + O(t^3); inverse known below 3 - 2(-1) = 5
        let p = t(-1).sub(&one()).with_trunc(3);
        let inv = p.inv(100).unwrap();
        assert_eq!(inv.trunc(), Some(5));
        assert!(p.mul(&inv).eq_to_order(&one()));
    }

    #[test]
    fn display() {
        let p = one().sub(&t(3).mul(&a())).add(&t(4).scale(&Rat::int(2))).with_trunc(6);
        assert_eq!(p.to_string(), "1 - a1*t^3 + 2*t^4 + O(t^6)");
        let q = t(2).mul(&a().add(&b()));
        assert_eq!(q.to_string(), "(a1 + b1)*t^2");
        assert_eq!(QLaurent::zero().to_string(), "0");
        assert_eq!(QLaurent::truncated_zero(3).to_string(), "O(t^3)");
    }

    #[test]
    fn adams_and_classical() {
        let p = one().sub(&t(1).mul(&a()));
        assert_eq!(p.adams(2), one().sub(&t(2).mul(&a()).mul(&a())));
        assert_eq!(p.at_t_one().unwrap(), MultiPoly::one().sub(&MultiPoly::var(Var::Alpha(0))));
        assert_eq!(p.with_trunc(5).at_t_one(), Err(Error::TruncatedCoefficient));
    }
}
