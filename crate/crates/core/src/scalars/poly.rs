//! Sparse multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{self, Rational};

/// A named indeterminate. Variables compare by name, which fixes the
/// variable order used by the term order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Power product with strictly positive exponents, sorted by variable.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut acc: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    Ordering::Less => {
                        out.push(a.clone());
                        i += 1;
                    }
                    Ordering::Greater => {
                        out.push(b.clone());
                        j += 1;
                    }
                    Ordering::Equal => {
                        out.push((a.0.clone(), a.1 + b.1));
                        i += 1;
                        j += 1;
                    }
                },
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (v, e) in &self.0 {
            let mut sub = 0;
            if let Some((w, f)) = other.0.get(j) {
                match w.cmp(v) {
                    Ordering::Less => return None,
                    Ordering::Equal => {
                        sub = *f;
                        j += 1;
                    }
                    Ordering::Greater => {}
                }
            }
            match e.cmp(&sub) {
                Ordering::Less => return None,
                Ordering::Equal => {}
                Ordering::Greater => out.push((v.clone(), e - sub)),
            }
        }
        (j == other.0.len()).then_some(Monomial(out))
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|(v, e)| {
                    let f = other.exponent(v);
                    (f > 0).then(|| (v.clone(), (*e).min(f)))
                })
                .collect(),
        )
    }

    fn without(&self, v: &Var) -> Monomial {
        Monomial(self.0.iter().filter(|(w, _)| w != v).cloned().collect())
    }
}

/// Graded lexicographic: total degree first, then the exponent of the
/// first variable (in name order) where the two differ.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.0.get(i), other.0.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => match a.1.cmp(&b.1) {
                            Ordering::Equal => {
                                i += 1;
                                j += 1;
                            }
                            ord => return ord,
                        },
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial in any finite set of named indeterminates with rational
/// coefficients. Zero coefficients are never stored, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rational::rat(n))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn var(name: &str) -> Self {
        Self::term(Rational::one(), Monomial::from_pairs([(Var::new(name), 1)]))
    }

    /// Build from `(coefficient, monomial)` pairs, merging duplicates.
    pub fn from_terms(items: impl IntoIterator<Item = (Rational, Monomial)>) -> Self {
        let mut p = MultiPoly::zero();
        for (c, m) in items {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        (self.terms.len() == 1 && self.is_constant()).then(|| self.terms.values().next().unwrap().clone())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending term order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    /// Indeterminates that actually occur.
    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|(v, _)| v.clone()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replace each mapped variable by a polynomial.
    pub fn substitute(&self, map: &BTreeMap<Var, MultiPoly>) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut piece = MultiPoly::constant(c.clone());
            let mut kept = Vec::new();
            for (v, e) in m.pairs() {
                match map.get(v) {
                    Some(p) => piece = &piece * &p.pow(*e),
                    None => kept.push((v.clone(), *e)),
                }
            }
            out = &out + &piece.mul_monomial(&Monomial::from_pairs(kept));
        }
        out
    }

    /// Evaluate at rational values for the mapped variables.
    pub fn eval(&self, values: &BTreeMap<Var, Rational>) -> MultiPoly {
        let map = values
            .iter()
            .map(|(v, q)| (v.clone(), MultiPoly::constant(q.clone())))
            .collect();
        self.substitute(&map)
    }

    /// Exact quotient `self / divisor`; `None` when the divisor is zero or
    /// does not divide.
    pub fn divide_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (dm, dc) = divisor.leading()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            let step = MultiPoly::term(qc, qm);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// Remainder of the division algorithm, used as a non-divisibility witness.
    pub fn reduce_by(&self, divisor: &MultiPoly) -> MultiPoly {
        let Some((dm, dc)) = divisor.leading() else {
            return self.clone();
        };
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut out = MultiPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let (rm, rc) = (rm.clone(), rc.clone());
            match rm.div(&dm) {
                Some(qm) => {
                    let step = MultiPoly::term(&rc / &dc, qm);
                    rem = &rem - &(&step * divisor);
                }
                None => {
                    rem.terms.remove(&rm);
                    out.add_term(rm, rc);
                }
            }
        }
        out
    }

    /// Scale so the leading coefficient is one.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => MultiPoly::zero(),
            Some((_, c)) => self.scale(&(Rational::one() / c)),
        }
    }

    fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = it.next().cloned().unwrap_or_default();
        it.fold(first, |acc, m| acc.gcd(m))
    }

    /// Coefficients with respect to `v`, keyed by exponent of `v`.
    fn coefficients_in(&self, v: &Var) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exponent(v))
                .or_default()
                .add_term(m.without(v), c.clone());
        }
        out
    }

    fn content_in(&self, v: &Var) -> MultiPoly {
        self.coefficients_in(v)
            .values()
            .fold(MultiPoly::zero(), |g, c| g.gcd(c))
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return MultiPoly::one();
        }
        if self.is_monomial() || other.is_monomial() {
            let g = self.monomial_content().gcd(&other.monomial_content());
            return MultiPoly::term(Rational::one(), g);
        }
        let mut vars = self.vars();
        vars.extend(other.vars());
        vars.sort();
        let v = vars[0].clone();
        let (da, db) = (self.degree_in(&v), other.degree_in(&v));
        if da == 0 {
            return self.gcd(&other.content_in(&v));
        }
        if db == 0 {
            return other.gcd(&self.content_in(&v));
        }
        let ca = self.content_in(&v);
        let cb = other.content_in(&v);
        let g = ca.gcd(&cb);
        let mut p = self.divide_exact(&ca).expect("content divides");
        let mut q = other.divide_exact(&cb).expect("content divides");
        if p.degree_in(&v) < q.degree_in(&v) {
            std::mem::swap(&mut p, &mut q);
        }
        loop {
            let r = p.pseudo_remainder(&q, &v);
            if r.is_zero() {
                break;
            }
            if r.degree_in(&v) == 0 {
                q = MultiPoly::one();
                break;
            }
            let cr = r.content_in(&v);
            p = q;
            q = r.divide_exact(&cr).expect("content divides");
        }
        (&g * &q).monic()
    }

    fn leading_in(&self, v: &Var) -> (u32, MultiPoly) {
        self.coefficients_in(v)
            .into_iter()
            .next_back()
            .unwrap_or((0, MultiPoly::zero()))
    }

    fn pseudo_remainder(&self, divisor: &MultiPoly, v: &Var) -> MultiPoly {
        let (dq, lq) = divisor.leading_in(v);
        let mut r = self.clone();
        loop {
            if r.is_zero() {
                return r;
            }
            let (dr, lr) = r.leading_in(v);
            if dr < dq {
                return r;
            }
            let shift = MultiPoly::term(Rational::one(), Monomial::from_pairs([(v.clone(), dr - dq)]));
            r = &(&lq * &r) - &(&(&lr * &shift) * divisor);
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let coeff = rational::to_text(&mag);
            if m.is_one() {
                f.write_str(&coeff)?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coeff}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as a list of `[coefficient, [[var, exponent], ...]]` in
/// descending term order.
impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let list: Vec<(String, Vec<(&str, u32)>)> = self
            .terms()
            .map(|(m, c)| {
                (
                    rational::to_text(c),
                    m.pairs().iter().map(|(v, e)| (v.name(), *e)).collect(),
                )
            })
            .collect();
        list.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let list: Vec<(String, Vec<(String, u32)>)> = Vec::deserialize(d)?;
        let mut items = Vec::with_capacity(list.len());
        for (c, mono) in list {
            let c = rational::from_text(&c).map_err(serde::de::Error::custom)?;
            let m = Monomial::from_pairs(mono.into_iter().map(|(v, e)| (Var::new(&v), e)));
            items.push((c, m));
        }
        Ok(MultiPoly::from_terms(items))
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl super::Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.divide_exact(rhs)
    }
}

// Only the constants are units; used by generic code that needs `inv`.
impl MultiPoly {
    pub fn inv_constant(&self) -> Option<MultiPoly> {
        let c = self.as_constant()?;
        super::Field::inv(&c).map(MultiPoly::constant)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::{frac, rat};

    fn v(n: &str) -> MultiPoly {
        MultiPoly::var(n)
    }

    #[test]
    fn difference_of_squares() {
        let t = v("t");
        let one = MultiPoly::one();
        let lhs = &(&t + &one) * &(&t - &one);
        assert_eq!(lhs, &t.pow(2) - &one);
        assert_eq!(lhs.to_string(), "t^2 - 1");
    }

    #[test]
    fn additive_identity() {
        let p = &(&v("alpha1") * &v("x2")) * &v("x3");
        assert_eq!(&p + &MultiPoly::zero(), p);
    }

    #[test]
    fn grlex_order() {
        let x = Var::new("x");
        let y = Var::new("y");
        let xy = Monomial::from_pairs([(x.clone(), 1), (y.clone(), 1)]);
        let x2 = Monomial::from_pairs([(x.clone(), 2)]);
        let y2 = Monomial::from_pairs([(y.clone(), 2)]);
        let x3 = Monomial::from_pairs([(x.clone(), 3)]);
        assert!(x2 > xy && xy > y2 && x3 > x2);
        assert!(Monomial::from_pairs([(y, 1)]) > Monomial::one());
    }

    #[test]
    fn exact_division() {
        let t = v("t");
        let one = MultiPoly::one();
        let q = (&t.pow(2) - &one).divide_exact(&(&t - &one)).unwrap();
        assert_eq!(q, &t + &one);
        assert!((&t.pow(2) + &one).divide_exact(&(&t - &one)).is_none());
        assert!(t.divide_exact(&MultiPoly::zero()).is_none());
    }

    #[test]
    fn remainder_witness() {
        let t = v("t");
        let one = MultiPoly::one();
        let r = (&t.pow(2) + &one).reduce_by(&(&t - &one));
        assert_eq!(r, MultiPoly::int(2));
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let (x, y, z) = (v("x"), v("y"), v("z"));
        let g = &(&x * &y) + &z;
        let a = &g * &(&x + &MultiPoly::int(3));
        let b = &g * &(&(&y * &y) - &z);
        assert_eq!(a.gcd(&b), g.monic());
        assert_eq!(x.gcd(&y), MultiPoly::one());
        assert_eq!((&x * &y).gcd(&(&x.pow(2) * &z)), x);
    }

    #[test]
    fn gcd_with_rational_content() {
        let t = v("t");
        let a = (&t - &MultiPoly::one()).scale(&frac(3, 2));
        let b = (&t.pow(2) - &MultiPoly::one()).scale(&rat(4));
        assert_eq!(a.gcd(&b), &t - &MultiPoly::one());
    }

    #[test]
    fn substitution() {
        let mut map = BTreeMap::new();
        map.insert(Var::new("x"), &v("y") + &MultiPoly::one());
        let p = &v("x").pow(2) * &v("z");
        let expect = &(&v("y") + &MultiPoly::one()).pow(2) * &v("z");
        assert_eq!(p.substitute(&map), expect);
    }

    #[test]
    fn serde_round_trip() {
        let p = &(&v("t").pow(3).scale(&frac(-5, 3)) + &v("alpha1")) + &MultiPoly::int(7);
        let json = serde_json::to_string(&p).unwrap();
        let back: MultiPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
