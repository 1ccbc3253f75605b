//! Exact rationals with an inline `i64` fast path.
//!
//! Almost every coefficient that shows up in q-Pochhammer expansions is a
//! small integer, so arithmetic stays on machine words until it overflows or
//! a genuine fraction appears.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rat {
    Int(i64),
    /// Never holds a value representable as `Int`.
    Big(BigRational),
}

impl Rat {
    pub const ZERO: Rat = Rat::Int(0);
    pub const ONE: Rat = Rat::Int(1);

    pub fn int(n: i64) -> Rat {
        Rat::Int(n)
    }

    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat::from_big(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(r: BigRational) -> Rat {
        if r.is_integer() {
            if let Some(n) = r.numer().to_i64() {
                return Rat::Int(n);
            }
        }
        Rat::Big(r)
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Int(n) => BigRational::from_integer(BigInt::from(*n)),
            Rat::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rat::Int(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rat::Int(1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rat::Int(_) => true,
            Rat::Big(r) => r.is_integer(),
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Rat::Int(n) => Some(*n),
            Rat::Big(_) => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Int(n) => *n < 0,
            Rat::Big(r) => r.is_negative(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Rat::Int(n) => *n as f64,
            Rat::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn recip(&self) -> Option<Rat> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rat::Int(1) => Rat::Int(1),
            Rat::Int(-1) => Rat::Int(-1),
            _ => Rat::from_big(self.to_big().recip()),
        })
    }

    pub fn pow(&self, e: u32) -> Rat {
        let mut acc = Rat::ONE;
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Generalized binomial coefficient `binom(self, k)`.
    pub fn binom(&self, k: u32) -> Rat {
        let mut acc = Rat::ONE;
        for i in 0..k {
            acc = &acc * &(self - &Rat::int(i as i64));
            acc = &acc / &Rat::int(i as i64 + 1);
        }
        acc
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::ZERO
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::Int(n)
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Self {
        Rat::from_big(r)
    }
}

impl<'a> Add<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn add(self, o: &Rat) -> Rat {
        if let (Rat::Int(a), Rat::Int(b)) = (self, o) {
            if let Some(c) = a.checked_add(*b) {
                return Rat::Int(c);
            }
        }
        Rat::from_big(self.to_big() + o.to_big())
    }
}

impl<'a> Sub<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn sub(self, o: &Rat) -> Rat {
        if let (Rat::Int(a), Rat::Int(b)) = (self, o) {
            if let Some(c) = a.checked_sub(*b) {
                return Rat::Int(c);
            }
        }
        Rat::from_big(self.to_big() - o.to_big())
    }
}

impl<'a> Mul<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn mul(self, o: &Rat) -> Rat {
        if let (Rat::Int(a), Rat::Int(b)) = (self, o) {
            if let Some(c) = a.checked_mul(*b) {
                return Rat::Int(c);
            }
        }
        Rat::from_big(self.to_big() * o.to_big())
    }
}

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, o: &Rat) -> Rat {
        assert!(!o.is_zero(), "division by zero rational");
        if let (Rat::Int(a), Rat::Int(b)) = (self, o) {
            if *b != 0 && a % b == 0 {
                if let Some(c) = a.checked_div(*b) {
                    return Rat::Int(c);
                }
            }
        }
        Rat::from_big(self.to_big() / o.to_big())
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self {
            Rat::Int(n) => match n.checked_neg() {
                Some(m) => Rat::Int(m),
                None => Rat::from_big(-self.to_big()),
            },
            Rat::Big(r) => Rat::from_big(-r.clone()),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                (&self).$m(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, o: &Rat) {
        if let (Rat::Int(a), Rat::Int(b)) = (&*self, o) {
            if let Some(c) = a.checked_add(*b) {
                *self = Rat::Int(c);
                return;
            }
        }
        *self = &*self + o;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, o: &Rat) {
        *self = &*self - o;
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rat::Int(a), Rat::Int(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Int(n) => write!(f, "{n}"),
            Rat::Big(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl Zero for Rat {
    fn zero() -> Self {
        Rat::ZERO
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
}

impl One for Rat {
    fn one() -> Self {
        Rat::ONE
    }
}

impl serde::Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
