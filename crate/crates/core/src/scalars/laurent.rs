//! Laurent polynomials in the single indeterminate `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{self, Rational};
use super::ScalarError;

/// Finite sum of `c·t^e` with `e ∈ ℤ`; zero coefficients are dropped.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentT {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentT {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentT { terms }
    }

    /// `t^exp`.
    pub fn t_pow(exp: i64) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    pub fn from_terms(items: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut out = LaurentT::zero();
        for (e, c) in items {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: i64, c: Rational) {
        let s = self.terms.get(&e).cloned().unwrap_or_else(Rational::zero) + c;
        if s.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Exponent/coefficient pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn support(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    /// Smallest and largest exponent with a nonzero coefficient.
    pub fn degree_range(&self) -> Result<(i64, i64), ScalarError> {
        let lo = self.terms.keys().next().ok_or(ScalarError::ZeroLaurent)?;
        let hi = self.terms.keys().next_back().ok_or(ScalarError::ZeroLaurent)?;
        Ok((*lo, *hi))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, a)| (*e, a * c)))
    }

    pub fn shift(&self, by: i64) -> Self {
        LaurentT { terms: self.terms.iter().map(|(e, c)| (e + by, c.clone())).collect() }
    }
}

impl fmt::Display for LaurentT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // highest exponent first, like polynomials
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let sep = match (k, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            f.write_str(sep)?;
            let mag = c.abs();
            let coeff = rational::to_text(&mag);
            match (*e, mag.is_one()) {
                (0, _) => f.write_str(&coeff)?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{coeff}*t")?,
                (e, true) => write!(f, "t^{e}")?,
                (e, false) => write!(f, "{coeff}*t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as `[[exponent, "coefficient"], ...]` in increasing exponent.
impl Serialize for LaurentT {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(i64, String)> = self.terms.iter().map(|(e, c)| (*e, rational::to_text(c))).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentT {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<(i64, String)> = Vec::deserialize(d)?;
        let mut items = Vec::with_capacity(v.len());
        for (e, c) in v {
            items.push((e, rational::from_text(&c).map_err(serde::de::Error::custom)?));
        }
        Ok(LaurentT::from_terms(items))
    }
}

impl Add<&LaurentT> for &LaurentT {
    type Output = LaurentT;
    fn add(self, rhs: &LaurentT) -> LaurentT {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&LaurentT> for &LaurentT {
    type Output = LaurentT;
    fn sub(self, rhs: &LaurentT) -> LaurentT {
        self + &(-rhs)
    }
}

impl Neg for &LaurentT {
    type Output = LaurentT;
    fn neg(self) -> LaurentT {
        LaurentT { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul<&LaurentT> for &LaurentT {
    type Output = LaurentT;
    fn mul(self, rhs: &LaurentT) -> LaurentT {
        let mut out = LaurentT::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::rat;

    #[test]
    fn degree_ranges() {
        let x = &LaurentT::t_pow(-4) + &LaurentT::monomial(rat(2), 0);
        assert_eq!(x.degree_range().unwrap(), (-4, 0));
        assert_eq!(LaurentT::monomial(rat(5), 0).degree_range().unwrap(), (0, 0));
        let sum = (0..=3).fold(LaurentT::zero(), |acc, n| &acc + &LaurentT::t_pow(-2 * n));
        assert_eq!(sum.degree_range().unwrap(), (-6, 0));
        assert_eq!(LaurentT::zero().degree_range(), Err(ScalarError::ZeroLaurent));
    }

    #[test]
    fn cancellation_drops_terms() {
        let x = &LaurentT::t_pow(-2) - &LaurentT::t_pow(-2);
        assert!(x.is_zero());
        let y = &(&LaurentT::t_pow(1) + &LaurentT::t_pow(-1)) * &LaurentT::t_pow(-1);
        assert_eq!(y.support(), vec![-2, 0]);
        assert_eq!(y.to_string(), "1 + t^-2");
    }

    #[test]
    fn serde_round_trip() {
        let x = LaurentT::from_terms([(-6, rat(3)), (2, rat(-1))]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"[[-6,"3"],[2,"-1"]]"#);
        assert_eq!(serde_json::from_str::<LaurentT>(&s).unwrap(), x);
    }
}
