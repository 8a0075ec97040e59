use std::fmt;

use serde::Serialize;

use super::CremonaError;
use crate::scalars::{Field, ProjValue, RatFunc, Ring};

/// `z ↦ (az + b)/(cz + d)`, stored with the first nonzero entry (row
/// order) equal to one so equality is structural.
#[derive(Clone, Debug, PartialEq)]
pub struct MoebiusMap<F: Field> {
    m: [[F; 2]; 2],
}

impl<F: Field> MoebiusMap<F> {
    pub fn new(a: F, b: F, c: F, d: F) -> Result<Self, CremonaError> {
        if a.mul_ref(&d).sub_ref(&b.mul_ref(&c)).is_zero() {
            return Err(CremonaError::Singular);
        }
        let lead = [&a, &b, &c, &d].into_iter().find(|x| !x.is_zero()).expect("det ≠ 0").inv().expect("nonzero");
        let s = |x: &F| x.mul_ref(&lead);
        Ok(MoebiusMap { m: [[s(&a), s(&b)], [s(&c), s(&d)]] })
    }

    pub fn identity() -> Self {
        Self::translate(F::zero())
    }

    /// `z ↦ z + c`.
    pub fn translate(c: F) -> Self {
        MoebiusMap { m: [[F::one(), c], [F::zero(), F::one()]] }
    }

    /// `z ↦ k·z`.
    pub fn scale(k: F) -> Result<Self, CremonaError> {
        Self::new(k, F::zero(), F::zero(), F::one())
    }

    pub fn matrix(&self) -> &[[F; 2]; 2] {
        &self.m
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let (p, q) = (&self.m, &other.m);
        let e = |i: usize, j: usize| p[i][0].mul_ref(&q[0][j]).add_ref(&p[i][1].mul_ref(&q[1][j]));
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1)).expect("product of invertible maps")
    }

    pub fn inverse(&self) -> Self {
        let [[a, b], [c, d]] = &self.m;
        Self::new(d.clone(), b.neg_ref(), c.neg_ref(), a.clone()).expect("invertible")
    }

    pub fn apply(&self, z: &ProjValue<F>) -> ProjValue<F> {
        let [x, y] = z.homogeneous();
        let [[a, b], [c, d]] = &self.m;
        let nx = a.mul_ref(&x).add_ref(&b.mul_ref(&y));
        let ny = c.mul_ref(&x).add_ref(&d.mul_ref(&y));
        ProjValue::from_homogeneous(&nx, &ny).expect("invertible map")
    }

    /// `Some(c)` when the map is `z ↦ z + c`.
    pub fn as_translation(&self) -> Option<&F> {
        let [[a, b], [c, d]] = &self.m;
        (a.is_one() && c.is_zero() && d.is_one()).then_some(b)
    }
}

impl<F: Field + fmt::Display> fmt::Display for MoebiusMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl<F: Field + fmt::Display> Serialize for MoebiusMap<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<[String; 2]> = self.m.iter().map(|r| [r[0].to_string(), r[1].to_string()]).collect();
        rows.serialize(s)
    }
}

fn bracket<F: Field>(p: &[F; 2], q: &[F; 2]) -> F {
    p[0].mul_ref(&q[1]).sub_ref(&p[1].mul_ref(&q[0]))
}

/// `(z1 − z3)(z2 − z4) / ((z2 − z3)(z1 − z4))`, with factors involving ∞
/// dropped (computed with 2×2 brackets of homogeneous coordinates).
pub fn cross_ratio<F: Field>(z: &[ProjValue<F>; 4]) -> Result<F, CremonaError> {
    let h: Vec<[F; 2]> = z.iter().map(ProjValue::homogeneous).collect();
    for i in 0..4 {
        for j in i + 1..4 {
            if bracket(&h[i], &h[j]).is_zero() {
                return Err(CremonaError::RepeatedEntries);
            }
        }
    }
    let num = bracket(&h[0], &h[2]).mul_ref(&bracket(&h[1], &h[3]));
    let den = bracket(&h[1], &h[2]).mul_ref(&bracket(&h[0], &h[3]));
    Ok(num.div_ref(&den).expect("distinct points"))
}

/// `{λ, 1−λ, 1/λ, 1/(1−λ), λ/(λ−1), (λ−1)/λ}`.
pub fn cross_ratio_orbit<F: Field>(l: &F) -> [F; 6] {
    let one = F::one();
    let oml = one.sub_ref(l);
    let lm1 = l.sub_ref(&one);
    let inv = |x: &F| x.inv().expect("cross-ratio avoids 0, 1");
    [l.clone(), oml.clone(), inv(l), inv(&oml), l.div_ref(&lm1).expect("λ ≠ 1"), lm1.div_ref(l).expect("λ ≠ 0")]
}

/// Ordered: equal cross-ratios. Unordered: one cross-ratio lies in the
/// six-element orbit of the other.
pub fn cross_ratio_equivalent<F: Field>(
    a: &[ProjValue<F>; 4],
    b: &[ProjValue<F>; 4],
    ordered: bool,
) -> Result<bool, CremonaError> {
    let (la, lb) = (cross_ratio(a)?, cross_ratio(b)?);
    Ok(if ordered { la == lb } else { cross_ratio_orbit(&la).contains(&lb) })
}

/// `scale(t^{2n})⁻¹ ∘ translate(a) ∘ scale(t^{2n})` over ℚ(t, a), checked
/// against `translate(t^{−2n}·a)`.
pub fn conjugate_translation(n: u32) -> Result<MoebiusMap<RatFunc>, CremonaError> {
    let t = RatFunc::var("t");
    let a = RatFunc::var("a");
    let k = t.pow(2 * n as i32).expect("t ≠ 0");
    let s = MoebiusMap::scale(k.clone())?;
    let conj = s.inverse().compose(&MoebiusMap::translate(a.clone())).compose(&s);
    let expected = MoebiusMap::translate(a.mul_ref(&k.inv().expect("t ≠ 0")));
    if conj != expected {
        return Err(CremonaError::ConjugationMismatch(n));
    }
    Ok(conj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::rat;
    use crate::scalars::Rational;

    fn fin(s: &str) -> ProjValue<RatFunc> {
        ProjValue::Finite(RatFunc::var(s))
    }

    fn c(n: i64) -> ProjValue<RatFunc> {
        ProjValue::Finite(RatFunc::constant(rat(n)))
    }

    #[test]
    fn kummer_quadruples() {
        let xt = [c(1), fin("t"), ProjValue::Infinity, c(0)];
        let us = [c(1), fin("s"), ProjValue::Infinity, c(0)];
        assert_eq!(cross_ratio(&xt).unwrap(), RatFunc::var("t"));
        assert!(!cross_ratio_equivalent(&xt, &us, true).unwrap());
        assert!(!cross_ratio_equivalent(&xt, &us, false).unwrap());
        assert!(cross_ratio_equivalent(&xt, &xt, true).unwrap());
        // a reordering is unordered-equivalent but not ordered-equivalent
        let re = [fin("t"), c(1), ProjValue::Infinity, c(0)];
        assert!(cross_ratio_equivalent(&xt, &re, false).unwrap());
        assert!(!cross_ratio_equivalent(&xt, &re, true).unwrap());
        assert_eq!(cross_ratio(&[c(1), c(1), c(2), c(3)]), Err(CremonaError::RepeatedEntries));
    }

    #[test]
    fn conjugation() {
        let t = RatFunc::var("t");
        let a = RatFunc::var("a");
        for n in 0..=10u32 {
            let m = conjugate_translation(n).unwrap();
            let want = a.mul_ref(&t.pow(-2 * n as i32).unwrap());
            assert_eq!(m.as_translation(), Some(&want));
            // fixes ∞ with equal diagonal entries
            assert_eq!(m.apply(&ProjValue::Infinity), ProjValue::Infinity);
            assert_eq!(m.matrix()[0][0], m.matrix()[1][1]);
        }
    }

    #[test]
    fn translations_add() {
        let tr = |n: i64| MoebiusMap::<Rational>::translate(rat(n));
        assert_eq!(tr(3).compose(&tr(4)), tr(7));
        assert_eq!(tr(3).inverse(), tr(-3));
        let m = MoebiusMap::new(rat(2), rat(0), rat(0), rat(2)).unwrap();
        assert_eq!(m, MoebiusMap::identity());
        assert!(MoebiusMap::new(rat(1), rat(2), rat(2), rat(4)).is_err());
    }
}
