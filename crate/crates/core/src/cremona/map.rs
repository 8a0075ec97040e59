use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use super::CremonaError;
use crate::scalars::rational::frac;
use crate::scalars::{MultiPoly, Rational, Var};

/// Homogeneous coordinate `x_i` of P³, `i ∈ 1..=4`.
pub fn x(i: usize) -> MultiPoly {
    MultiPoly::var(&format!("x{i}"))
}

/// Parameter `α_i`, `i ∈ 1..=3`.
pub fn alpha(i: usize) -> MultiPoly {
    MultiPoly::var(&format!("α{i}"))
}

fn xvar(i: usize) -> Var {
    Var::new(&format!("x{i}"))
}

/// `[f1 : f2 : f3 : f4]` with homogeneous components of one degree in the
/// `x_i`, coefficients polynomial in the parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMapP3 {
    components: [MultiPoly; 4],
}

fn x_degree(p: &MultiPoly) -> Option<Option<u32>> {
    // Some(None) for zero, Some(Some(d)) homogeneous of degree d, None otherwise
    let xs: Vec<Var> = (1..=4).map(xvar).collect();
    let mut deg = None;
    for (m, _) in p.terms() {
        let d: u32 = xs.iter().map(|v| m.exponent(v)).sum();
        match deg {
            None => deg = Some(d),
            Some(e) if e != d => return None,
            _ => {}
        }
    }
    Some(deg)
}

impl RationalMapP3 {
    pub fn new(components: [MultiPoly; 4]) -> Result<Self, CremonaError> {
        if components.iter().all(MultiPoly::is_zero) {
            return Err(CremonaError::InvalidMap("all components vanish".into()));
        }
        let mut deg = None;
        for c in &components {
            match x_degree(c) {
                None => return Err(CremonaError::InvalidMap(format!("{c} is not homogeneous"))),
                Some(None) => {}
                Some(Some(d)) if deg.is_some_and(|e| e != d) => {
                    return Err(CremonaError::InvalidMap("components of different degrees".into()))
                }
                Some(Some(d)) => deg = Some(d),
            }
        }
        let g = components.iter().fold(MultiPoly::zero(), |g, c| g.gcd(c));
        if g.total_degree().unwrap_or(0) > 0 {
            return Err(CremonaError::InvalidMap(format!("components share the factor {g}")));
        }
        Ok(RationalMapP3 { components })
    }

    pub fn identity() -> Self {
        RationalMapP3 { components: [x(1), x(2), x(3), x(4)] }
    }

    /// `x ↦ [x_{σ(1)} : … : x_{σ(4)}]`, indices 1-based.
    pub fn permutation(sigma: [usize; 4]) -> Self {
        RationalMapP3 { components: sigma.map(x) }
    }

    /// The Cremona involution `[α1/x1 : α2/x2 : α3/x3 : α1α2α3/x4]`, cleared of denominators.
    pub fn tau() -> Self {
        let (a1, a2, a3) = (alpha(1), alpha(2), alpha(3));
        RationalMapP3 {
            components: [
                &a1 * &(&(&x(2) * &x(3)) * &x(4)),
                &a2 * &(&(&x(1) * &x(3)) * &x(4)),
                &a3 * &(&(&x(1) * &x(2)) * &x(4)),
                &(&(&a1 * &a2) * &a3) * &(&(&x(1) * &x(2)) * &x(3)),
            ],
        }
    }

    pub fn components(&self) -> &[MultiPoly; 4] {
        &self.components
    }

    /// Pullback of a polynomial: substitute `x_i ↦ f_i`.
    pub fn pullback(&self, p: &MultiPoly) -> MultiPoly {
        let map: BTreeMap<Var, MultiPoly> = (1..=4).map(|i| (xvar(i), self.components[i - 1].clone())).collect();
        p.substitute(&map)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        RationalMapP3 { components: self.components.clone().map(|c| other.pullback(&c)) }
    }

    /// Substitute values for parameters such as `α_i`.
    pub fn specialize(&self, values: &BTreeMap<Var, Rational>) -> Self {
        RationalMapP3 { components: self.components.clone().map(|c| c.eval(values)) }
    }
}

impl fmt::Display for RationalMapP3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.components;
        write!(f, "[{a} : {b} : {c} : {d}]")
    }
}

impl Serialize for RationalMapP3 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.components.iter().map(|c| c.to_string()))
    }
}

/// Quadratic form on P³ kept both as a polynomial and as its symmetric
/// matrix `A` with `q = xᵀ A x`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricForm {
    poly: MultiPoly,
    matrix: Vec<Vec<MultiPoly>>,
}

impl QuadricForm {
    pub fn from_poly(poly: MultiPoly) -> Result<Self, CremonaError> {
        if x_degree(&poly) != Some(Some(2)) {
            return Err(CremonaError::InvalidMap(format!("{poly} is not a quadratic form")));
        }
        let xs: Vec<Var> = (1..=4).map(xvar).collect();
        let mut matrix = vec![vec![MultiPoly::zero(); 4]; 4];
        for (m, c) in poly.terms() {
            let idx: Vec<usize> = (0..4).flat_map(|i| std::iter::repeat(i).take(m.exponent(&xs[i]) as usize)).collect();
            let rest = crate::scalars::Monomial::from_pairs(
                m.pairs().iter().filter(|(v, _)| !xs.contains(v)).cloned(),
            );
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                matrix[i][i] = &matrix[i][i] + &MultiPoly::term(c.clone(), rest);
            } else {
                let half = MultiPoly::term(c * frac(1, 2), rest);
                matrix[i][j] = &matrix[i][j] + &half;
                matrix[j][i] = &matrix[j][i] + &half;
            }
        }
        Ok(QuadricForm { poly, matrix })
    }

    /// `α1x2x3 + α2x1x3 + α3x1x2 + (x1 + x2 + x3)x4`.
    pub fn standard() -> Self {
        let p = &(&(&(&alpha(1) * &(&x(2) * &x(3))) + &(&alpha(2) * &(&x(1) * &x(3))))
            + &(&alpha(3) * &(&x(1) * &x(2))))
            + &(&(&(&x(1) + &x(2)) + &x(3)) * &x(4));
        Self::from_poly(p).expect("quadratic")
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn matrix(&self) -> &[Vec<MultiPoly>] {
        &self.matrix
    }

    /// `xᵀ A x`, which must reproduce the polynomial.
    pub fn matrix_poly(&self) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for i in 0..4 {
            for j in 0..4 {
                acc = &acc + &(&self.matrix[i][j] * &(&x(i + 1) * &x(j + 1)));
            }
        }
        acc
    }

    pub fn specialize(&self, values: &BTreeMap<Var, Rational>) -> Self {
        QuadricForm {
            poly: self.poly.eval(values),
            matrix: self.matrix.iter().map(|r| r.iter().map(|e| e.eval(values)).collect()).collect(),
        }
    }

    /// The matrix when all entries are constants.
    pub fn rational_matrix(&self) -> Option<Vec<Vec<Rational>>> {
        self.matrix.iter().map(|r| r.iter().map(MultiPoly::as_constant).collect()).collect()
    }
}

/// The cofactor `c` with `q(f(x)) = c·q(x)`, or the division remainder.
pub fn preserves_quadric(map: &RationalMapP3, q: &QuadricForm) -> Result<MultiPoly, CremonaError> {
    let pulled = map.pullback(q.poly());
    match pulled.divide_exact(q.poly()) {
        Some(c) if !c.is_zero() => Ok(c),
        _ => Err(CremonaError::NotPreserved { remainder: pulled.reduce_by(q.poly()) }),
    }
}

/// The polynomial `c` with `f(f(x)) = c·x` componentwise.
pub fn involution_cofactor(map: &RationalMapP3) -> Result<MultiPoly, CremonaError> {
    let sq = map.compose(map);
    let c = sq.components[0]
        .divide_exact(&x(1))
        .filter(|c| !c.is_zero())
        .ok_or_else(|| CremonaError::NotInvolution { component: 1, value: sq.components[0].clone() })?;
    for i in 0..4 {
        if sq.components[i] != &c * &x(i + 1) {
            return Err(CremonaError::NotInvolution { component: i + 1, value: sq.components[i].clone() });
        }
    }
    Ok(c)
}

/// Image of the plane `x_i = 0`: exactly one component may survive, and
/// the plane is contracted to the corresponding coordinate point.
pub fn contraction_check(map: &RationalMapP3, i: usize) -> Result<[Rational; 4], CremonaError> {
    assert!((1..=4).contains(&i), "index {i} out of range 1..=4");
    let zero = BTreeMap::from([(xvar(i), Rational::zero())]);
    let surviving: Vec<usize> = (0..4).filter(|&k| !map.components[k].eval(&zero).is_zero()).collect();
    match surviving.as_slice() {
        [k] => {
            let mut p = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
            p[*k] = Rational::one();
            Ok(p)
        }
        s => Err(CremonaError::NoContraction { index: i, survivors: s.len() }),
    }
}
