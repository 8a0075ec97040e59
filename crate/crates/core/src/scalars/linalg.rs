//! Fraction-free elimination over any ring of the tower, plus field-only
//! routines (kernel, inverse).

use super::{Field, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct RankDet<R> {
    pub rank: usize,
    /// Present only for square input.
    pub det: Option<R>,
}

/// Rank and (for square input) determinant by Bareiss elimination.
///
/// Every intermediate entry is a minor of the input, so the division by the
/// previous pivot is exact in any integral domain.
pub fn matrix_rank_det<R: Ring>(m: &[Vec<R>]) -> RankDet<R> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<R>> = m.to_vec();
    let mut prev = R::one();
    let mut negate = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            negate = !negate;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = a[r][c].mul_ref(&a[i][j]).sub_ref(&a[i][c].mul_ref(&a[r][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][c] = R::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    let det = (rows == cols).then(|| {
        if r < rows {
            R::zero()
        } else if rows == 0 {
            R::one()
        } else if negate {
            prev.neg_ref()
        } else {
            prev
        }
    });
    RankDet { rank: r, det }
}

/// Reduced row echelon form; returns the pivot columns.
fn rref<F: Field>(a: &mut [Vec<F>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for j in c..cols {
            a[r][j] = a[r][j].mul_ref(&inv);
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let v = a[i][j].sub_ref(&f.mul_ref(&a[r][j]));
                    a[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : m·x = 0}`, one vector per free column.
pub fn nullspace<F: Field>(m: &[Vec<F>]) -> Vec<Vec<F>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = a[row][f].neg_ref();
            }
            v
        })
        .collect()
}

pub fn inverse<F: Field>(m: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut a: Vec<Vec<F>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut a);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
