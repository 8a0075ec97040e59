//! Rational functions: reduced quotients of polynomials.

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::poly::MultiPoly;
use super::rational::Rational;
use super::{Field, Ring, ScalarError};

/// `numerator / denominator` with `gcd = 1` and a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRatFunc")]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

#[derive(Deserialize)]
struct RawRatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl TryFrom<RawRatFunc> for RatFunc {
    type Error = ScalarError;
    fn try_from(r: RawRatFunc) -> Result<Self, ScalarError> {
        RatFunc::new(r.num, r.den)
    }
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: MultiPoly::one() };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.divide_exact(&g).expect("gcd divides"), den.divide_exact(&g).expect("gcd divides"))
        };
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        if !One::is_one(&lc) {
            let s = <Rational as One>::one() / lc;
            num = num.scale(&s);
            den = den.scale(&s);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc { num: p, den: MultiPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn var(name: &str) -> Self {
        Self::from_poly(MultiPoly::var(name))
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.den.is_constant().then_some(&self.num)
    }

    pub fn pow(&self, e: i32) -> Option<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Some(RatFunc { num: base.num.pow(k), den: base.den.pow(k) })
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &MultiPoly| {
            if p.len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::normalize(&self.num + &rhs.num, self.den.clone());
        }
        Self::normalize(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        Self::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
    fn neg_ref(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.div_ref(rhs)
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        (!self.num.is_zero()).then(|| Self::normalize(self.den.clone(), self.num.clone()))
    }
}
