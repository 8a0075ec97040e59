use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::hnf::{integer_kernel, is_saturated};
use super::{IntMatrix, IntRow, LatticeError};
use crate::scalars::rational::{as_integer, Rational};
use crate::scalars::matrix_rank_det;

/// A lattice presented by a labeled basis and its symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramLattice {
    labels: Vec<String>,
    gram: Vec<Vec<Rational>>,
}

impl GramLattice {
    pub fn new(labels: Vec<String>, gram: Vec<Vec<Rational>>) -> Result<Self, LatticeError> {
        let n = gram.len();
        if labels.len() != n {
            return Err(LatticeError::LabelMismatch { labels: labels.len(), dim: n });
        }
        for i in 0..n {
            if gram[i].len() != n {
                return Err(LatticeError::Length { got: gram[i].len(), expected: n });
            }
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
            }
        }
        Ok(GramLattice { labels, gram })
    }

    /// Integer Gram matrix with generated labels `prefix1, prefix2, ...`.
    pub fn from_ints(prefix: &str, gram: &[Vec<i64>]) -> Result<Self, LatticeError> {
        let labels = (1..=gram.len()).map(|i| format!("{prefix}{i}")).collect();
        let g = gram.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
        Self::new(labels, g)
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.gram[i][j]
    }

    pub fn rank(&self) -> usize {
        matrix_rank_det(&self.gram).rank
    }

    pub fn det(&self) -> Rational {
        matrix_rank_det(&self.gram).det.expect("square")
    }

    pub fn int_gram(&self) -> Result<IntMatrix, LatticeError> {
        self.gram
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .map(|(j, q)| as_integer(q).ok_or(LatticeError::NonIntegral(i, j)))
                    .collect()
            })
            .collect()
    }

    /// `xᵀ·G·y` for integer coordinate vectors.
    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> Rational {
        let mut acc = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    acc += &self.gram[i][j] * Rational::from_integer(xi * yj);
                }
            }
        }
        acc
    }

    /// Gram matrix of the given vectors (rows, in this lattice's basis).
    pub fn restrict(&self, basis: &[IntRow], prefix: &str) -> GramLattice {
        let gram = basis
            .iter()
            .map(|x| basis.iter().map(|y| self.pair(x, y)).collect())
            .collect();
        let labels = (1..=basis.len()).map(|i| format!("{prefix}{i}")).collect();
        GramLattice { labels, gram }
    }

    pub fn is_positive_definite(&self) -> bool {
        let s = signature(self);
        s.plus == self.dim()
    }
}

#[derive(Serialize, Deserialize)]
struct GramJson {
    labels: Vec<String>,
    gram: Vec<Vec<i64>>,
}

/// Serialized as integer arrays alongside the labels.
impl Serialize for GramLattice {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let gram = self
            .int_gram()
            .map_err(serde::ser::Error::custom)?
            .into_iter()
            .map(|r| r.into_iter().map(|x| i64::try_from(x).map_err(serde::ser::Error::custom)).collect())
            .collect::<Result<_, _>>()?;
        GramJson { labels: self.labels.clone(), gram }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GramLattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = GramJson::deserialize(d)?;
        let g = raw.gram.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
        GramLattice::new(raw.labels, g).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

/// Inertia by symmetric (congruence) elimination over ℚ.
pub fn signature(lat: &GramLattice) -> Signature {
    let mut a: Vec<Vec<Rational>> = lat.gram.clone();
    let n = a.len();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut plus, mut minus) = (0, 0);
    while !active.is_empty() {
        let pivot = match active.iter().copied().find(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                let Some((i, j)) = pair else { break };
                // row_i += row_j, col_i += col_j: new a_ii = 2·a_ij ≠ 0
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let d = a[pivot][pivot].clone();
        if d.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        active.retain(|&i| i != pivot);
        for &r in &active {
            if a[r][pivot].is_zero() {
                continue;
            }
            let f = &a[r][pivot] / &d;
            for k in 0..n {
                let v = &f * &a[pivot][k];
                a[r][k] -= v;
            }
            for k in 0..n {
                let v = &f * &a[k][pivot];
                a[k][r] -= v;
            }
        }
    }
    Signature { plus, minus, zero: n - plus - minus }
}

/// ℤ-basis (ambient coordinates) of the vectors orthogonal to `sub_basis`.
pub fn orth_complement_basis(ambient: &GramLattice, sub_basis: &[IntRow]) -> Result<Vec<IntRow>, LatticeError> {
    let n = ambient.dim();
    let g = ambient.int_gram()?;
    let mut rows: IntMatrix = Vec::with_capacity(sub_basis.len());
    for v in sub_basis {
        if v.len() != n {
            return Err(LatticeError::Length { got: v.len(), expected: n });
        }
        rows.push((0..n).map(|j| v.iter().zip(&g).map(|(x, gr)| x * &gr[j]).sum()).collect());
    }
    let basis = integer_kernel(&rows, n);
    debug_assert!(basis.is_empty() || is_saturated(&basis));
    Ok(basis)
}

/// The primitive sublattice orthogonal to `sub_basis`, with induced Gram.
pub fn orth_complement(ambient: &GramLattice, sub_basis: &[IntRow]) -> Result<GramLattice, LatticeError> {
    let basis = orth_complement_basis(ambient, sub_basis)?;
    Ok(ambient.restrict(&basis, "w"))
}

/// LDLᵀ data for a positive definite form: `Q(x) = Σ dᵢ (xᵢ + Σ_{j>i} μᵢⱼ xⱼ)²`.
fn ldl(gram: &[Vec<Rational>]) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let n = gram.len();
    let mut q: Vec<Vec<Rational>> = gram.to_vec();
    for i in 0..n {
        if !q[i][i].is_positive() {
            return None;
        }
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let v = &q[k][i] * &q[i][l];
                q[k][l] -= v;
            }
        }
    }
    let d = (0..n).map(|i| q[i][i].clone()).collect();
    Some((d, q))
}

fn floor_sqrt_bound(r: &Rational) -> BigInt {
    // integer s with s ≥ sqrt(r)
    let c = r.ceil().to_integer();
    if c.is_negative() {
        return BigInt::zero();
    }
    c.sqrt() + BigInt::one()
}

/// All nonzero `x ∈ ℤⁿ` with `xᵀGx ≤ bound`, by exact Fincke–Pohst
/// enumeration. Requires positive definite input.
pub fn short_vectors(lat: &GramLattice, bound: &Rational) -> Result<Vec<IntRow>, LatticeError> {
    let n = lat.dim();
    let (d, mu) = ldl(&lat.gram).ok_or(LatticeError::NotPositiveDefinite)?;
    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); n];
    fn rec(
        i: usize,
        used: Rational,
        bound: &Rational,
        d: &[Rational],
        mu: &[Vec<Rational>],
        x: &mut IntRow,
        out: &mut Vec<IntRow>,
    ) {
        let n = x.len();
        let center: Rational = -(i + 1..n).map(|j| &mu[i][j] * Rational::from_integer(x[j].clone())).sum::<Rational>();
        let room = (bound - &used) / &d[i];
        let s = floor_sqrt_bound(&room);
        let lo = center.floor().to_integer() - &s;
        let hi = center.ceil().to_integer() + &s;
        let mut xi = lo;
        while xi <= hi {
            let diff = Rational::from_integer(xi.clone()) - &center;
            let term = &d[i] * &diff * &diff;
            let total = &used + &term;
            if &total <= bound {
                x[i] = xi.clone();
                if i == 0 {
                    if x.iter().any(|v| !v.is_zero()) {
                        out.push(x.clone());
                    }
                } else {
                    rec(i - 1, total, bound, d, mu, x, out);
                }
            }
            xi += 1;
        }
        x[i] = BigInt::zero();
    }
    if n > 0 {
        rec(n - 1, Rational::zero(), bound, &d, &mu, &mut x, &mut out);
    }
    out.sort();
    Ok(out)
}

/// Simple roots of the root system formed by the norm-2 vectors of a
/// positive definite lattice, and their Gram matrix. Positivity is decided
/// by a generic integral functional, so the result is deterministic.
pub fn simple_root_basis(lat: &GramLattice) -> Result<(Vec<IntRow>, GramLattice), LatticeError> {
    let two = Rational::from_integer(BigInt::from(2));
    let roots: Vec<IntRow> = short_vectors(lat, &two)?
        .into_iter()
        .filter(|v| lat.pair(v, v) == two)
        .collect();
    let span = roots
        .iter()
        .flat_map(|v| v.iter().map(|x| x.abs()))
        .max()
        .unwrap_or_else(BigInt::zero);
    let w = span * 2 + 1;
    let height = |v: &IntRow| -> BigInt {
        let mut acc = BigInt::zero();
        for x in v.iter().rev() {
            acc = acc * &w + x;
        }
        acc
    };
    let mut positive: Vec<(BigInt, IntRow)> = roots
        .iter()
        .map(|v| (height(v), v.clone()))
        .filter(|(h, _)| h.is_positive())
        .collect();
    positive.sort();
    let pos_set: std::collections::BTreeSet<IntRow> = positive.iter().map(|(_, v)| v.clone()).collect();
    let mut decomposable = std::collections::BTreeSet::new();
    for (i, (_, a)) in positive.iter().enumerate() {
        for (_, b) in positive.iter().skip(i + 1) {
            let s: IntRow = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if pos_set.contains(&s) {
                decomposable.insert(s);
            }
        }
    }
    let simple: Vec<IntRow> = positive
        .into_iter()
        .map(|(_, v)| v)
        .filter(|v| !decomposable.contains(v))
        .collect();
    let g = lat.restrict(&simple, "r");
    Ok((simple, g))
}
