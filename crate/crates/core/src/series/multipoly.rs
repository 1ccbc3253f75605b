//! Sparse polynomials in the strip parameters α_j, β_j over exact rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::rat::Rat;

/// Maximum number of α (and separately β) parameters a monomial can carry.
pub const MAX_PARAMS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// α_j, zero-based index.
    Alpha(usize),
    /// β_j, zero-based index.
    Beta(usize),
}

impl Var {
    fn slot(self) -> usize {
        match self {
            Var::Alpha(j) => {
                assert!(j < MAX_PARAMS, "alpha index {j} out of range");
                j
            }
            Var::Beta(j) => {
                assert!(j < MAX_PARAMS, "beta index {j} out of range");
                MAX_PARAMS + j
            }
        }
    }

    fn from_slot(i: usize) -> Var {
        if i < MAX_PARAMS {
            Var::Alpha(i)
        } else {
            Var::Beta(i - MAX_PARAMS)
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Alpha(j) => write!(f, "a{}", j + 1),
            Var::Beta(j) => write!(f, "b{}", j + 1),
        }
    }
}

/// Exponent vector over α_1..α_8, β_1..β_8. Ordered graded-lexicographically
/// with α_1 > … > α_8 > β_1 > … > β_8.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; 2 * MAX_PARAMS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; 2 * MAX_PARAMS],
    };

    pub fn var(v: Var) -> Monomial {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u16) -> Monomial {
        let mut m = Monomial::ONE;
        m.exps[v.slot()] = e;
        m
    }

    /// Raw exponents, α first.
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.exps[v.slot()]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(o.exps.iter()) {
            *a = a.checked_add(*b).expect("monomial exponent overflow");
        }
        m
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let mut m = *self;
        for a in m.exps.iter_mut() {
            *a = a
                .checked_mul(u16::try_from(k).expect("monomial exponent overflow"))
                .expect("monomial exponent overflow");
        }
        m
    }

    /// Nonzero (variable, exponent) pairs in slot order.
    pub fn factors(&self) -> impl Iterator<Item = (Var, u16)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Var::from_slot(i), e))
    }

    pub fn eval(&self, alpha: &[Complex64], beta: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for (v, e) in self.factors() {
            let base = match v {
                Var::Alpha(j) => alpha[j],
                Var::Beta(j) => beta[j],
            };
            acc *= base.powu(e as u32);
        }
        acc
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.factors() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| o.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(Rat::ONE)
    }

    pub fn constant(c: Rat) -> MultiPoly {
        MultiPoly::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: Rat) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> MultiPoly {
        MultiPoly::term(Monomial::var(v), Rat::ONE)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::ZERO),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rat {
        self.terms.get(&Monomial::ONE).cloned().unwrap_or(Rat::ZERO)
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or(Rat::ZERO)
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, o: &MultiPoly) {
        for (m, c) in &o.terms {
            self.add_term(*m, c);
        }
    }

    pub fn sub_assign(&mut self, o: &MultiPoly) {
        for (m, c) in &o.terms {
            self.add_term(*m, &-c);
        }
    }

    pub fn add(&self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn sub(&self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        r.sub_assign(o);
        r
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, k: &Rat) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(a, c)| (a.mul(m), c * k)).collect(),
        }
    }

    /// `acc += self * o`, without an intermediate allocation.
    pub fn mul_acc(&self, o: &MultiPoly, acc: &mut MultiPoly) {
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                acc.add_term(ma.mul(mb), &(ca * cb));
            }
        }
    }

    pub fn mul(&self, o: &MultiPoly) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        self.mul_acc(o, &mut acc);
        acc
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Adams operation: every variable raised to the k-th power.
    pub fn adams(&self, k: u32) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.pow(k), c.clone())).collect(),
        }
    }

    pub fn eval(&self, alpha: &[Complex64], beta: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| m.eval(alpha, beta) * c.to_f64())
            .sum()
    }

    /// Substitute exact rational values for the variables.
    pub fn eval_exact(&self, alpha: &[Rat], beta: &[Rat]) -> Rat {
        let mut acc = Rat::ZERO;
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (var, e) in m.factors() {
                let base = match var {
                    Var::Alpha(j) => &alpha[j],
                    Var::Beta(j) => &beta[j],
                };
                v = &v * &base.pow(e as u32);
            }
            acc += &v;
        }
        acc
    }

    pub fn all_integer(&self) -> bool {
        self.terms.values().all(Rat::is_integer)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl serde::Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
