//! Quadratic extensions `F(δ)` with `δ² = d`, used when rulings of a
//! quadric are not defined over the base field.

use std::fmt;

use super::{Field, Ring};

/// `re + im·δ` with `δ² = d`.
///
/// Elements with `im = 0` may omit `d`; it is adopted from the other
/// operand on first use. Mixing two different `d` values is a logic error.
#[derive(Clone)]
pub struct QuadExt<F: Field> {
    pub re: F,
    pub im: F,
    d: Option<F>,
}

impl<F: Field> QuadExt<F> {
    pub fn new(re: F, im: F, d: F) -> Self {
        QuadExt { re, im, d: Some(d) }
    }

    pub fn base(re: F) -> Self {
        QuadExt { re, im: F::zero(), d: None }
    }

    /// The generator `δ` itself.
    pub fn delta(d: F) -> Self {
        QuadExt { re: F::zero(), im: F::one(), d: Some(d) }
    }

    pub fn square_class(&self) -> Option<&F> {
        self.d.as_ref()
    }

    fn merged(&self, other: &Self) -> Option<F> {
        match (&self.d, &other.d) {
            (Some(a), Some(b)) => {
                assert!(a == b, "mixed quadratic extensions");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    /// Galois conjugate `re − im·δ`.
    pub fn conj(&self) -> Self {
        QuadExt { re: self.re.clone(), im: self.im.neg_ref(), d: self.d.clone() }
    }

    /// `re² − d·im²`, an element of the base field.
    pub fn norm(&self) -> F {
        let rr = self.re.mul_ref(&self.re);
        match &self.d {
            None => rr,
            Some(d) => rr.sub_ref(&d.mul_ref(&self.im.mul_ref(&self.im))),
        }
    }
}

impl<F: Field + fmt::Display> fmt::Display for QuadExt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({}) + ({})*sqrt({})", self.re, self.im, self.d.as_ref().unwrap())
        }
    }
}

impl<F: Field> fmt::Debug for QuadExt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + {:?}·δ (δ²={:?})", self.re, self.im, self.d)
    }
}

impl<F: Field> Ring for QuadExt<F> {
    fn zero() -> Self {
        Self::base(F::zero())
    }
    fn one() -> Self {
        Self::base(F::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        QuadExt { re: self.re.add_ref(&rhs.re), im: self.im.add_ref(&rhs.im), d: self.merged(rhs) }
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        QuadExt { re: self.re.sub_ref(&rhs.re), im: self.im.sub_ref(&rhs.im), d: self.merged(rhs) }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let d = self.merged(rhs);
        let mut re = self.re.mul_ref(&rhs.re);
        let ii = self.im.mul_ref(&rhs.im);
        if !ii.is_zero() {
            re = re.add_ref(&d.as_ref().expect("δ² known").mul_ref(&ii));
        }
        let im = self.re.mul_ref(&rhs.im).add_ref(&self.im.mul_ref(&rhs.re));
        QuadExt { re, im, d }
    }
    fn neg_ref(&self) -> Self {
        QuadExt { re: self.re.neg_ref(), im: self.im.neg_ref(), d: self.d.clone() }
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.div_ref(rhs)
    }
}

/// Equality ignores whether `d` has been recorded yet.
impl<F: Field> PartialEq for QuadExt<F> {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im
    }
}

impl<F: Field> Field for QuadExt<F> {
    fn inv(&self) -> Option<Self> {
        // 1/(a + bδ) = (a − bδ)/(a² − d b²); the norm is nonzero unless d is a square
        let n = self.norm().inv()?;
        let c = self.conj();
        Some(QuadExt { re: c.re.mul_ref(&n), im: c.im.mul_ref(&n), d: self.d.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::{frac, rat, Rational};

    type Q2 = QuadExt<Rational>;

    #[test]
    fn delta_squares_to_d() {
        let s = Q2::delta(rat(2));
        let sq = s.mul_ref(&s);
        assert_eq!(sq, Q2::base(rat(2)));
    }

    #[test]
    fn inverse_round_trip() {
        let x = Q2::new(rat(3), frac(-1, 2), rat(5));
        let y = x.inv().unwrap();
        assert_eq!(x.mul_ref(&y), Q2::one());
        assert!(Q2::zero().inv().is_none());
    }
}
