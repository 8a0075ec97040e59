//! Hermite and Smith normal forms over ℤ and the membership test built on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, IntRow};

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// `row[dst] = a·row[dst] + b·row[src]` style helpers on a pair of rows.
fn combine(m: &mut IntMatrix, r: usize, i: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
    // [row_r; row_i] <- [[x, y], [u, v]] · [row_r; row_i]
    for k in 0..m[r].len() {
        let (a, b) = (m[r][k].clone(), m[i][k].clone());
        m[r][k] = x * &a + y * &b;
        m[i][k] = u * &a + v * &b;
    }
}

fn sub_multiple(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for k in 0..m[dst].len() {
        let v = &m[src][k] * q;
        m[dst][k] -= v;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for x in m[r].iter_mut() {
        *x = -x.clone();
    }
}

/// Row Hermite normal form `H = U·A`.
///
/// Convention: nonzero rows first, pivots strictly increasing in column and
/// positive, entries above a pivot reduced into `[0, pivot)`. `U` is
/// unimodular.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut h = a.clone();
    let mut u = identity(m);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        for i in r + 1..m {
            if h[i][c].is_zero() {
                continue;
            }
            let eg = h[r][c].extended_gcd(&h[i][c]);
            let a_ = &h[r][c] / &eg.gcd;
            let b_ = &h[i][c] / &eg.gcd;
            // det [[x, y], [-b, a]] = x·a + y·b = 1
            let nb = -b_;
            combine(&mut h, r, i, &eg.x, &eg.y, &nb, &a_);
            combine(&mut u, r, i, &eg.x, &eg.y, &nb, &a_);
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            sub_multiple(&mut h, i, r, &q);
            sub_multiple(&mut u, i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Number of nonzero rows of a matrix in Hermite form.
pub fn hnf_rank(h: &IntMatrix) -> usize {
    h.iter().take_while(|row| row.iter().any(|x| !x.is_zero())).count()
}

/// Result of a ℤ-span membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// `Σ witness[i]·gens[i] = target` when `member`.
    pub witness: Option<Vec<BigInt>>,
}

pub fn z_span_membership(gens: &[IntRow], target: &IntRow) -> Membership {
    let no = Membership { member: false, witness: None };
    if gens.is_empty() {
        return if target.iter().all(Zero::is_zero) {
            Membership { member: true, witness: Some(Vec::new()) }
        } else {
            no
        };
    }
    assert!(gens.iter().all(|g| g.len() == target.len()), "vectors of unequal length");
    let (h, u) = hnf(&gens.to_vec());
    let rank = hnf_rank(&h);
    let mut rest = target.clone();
    let mut coeffs = vec![BigInt::zero(); gens.len()];
    for (i, row) in h.iter().enumerate().take(rank) {
        let c = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
        let (q, rem) = rest[c].div_rem(&row[c]);
        if !rem.is_zero() {
            return no;
        }
        for (k, x) in row.iter().enumerate() {
            rest[k] -= x * &q;
        }
        coeffs[i] = q;
    }
    if rest.iter().any(|x| !x.is_zero()) {
        return no;
    }
    // target = Σ coeffs[i]·H[i] = Σ_j (Σ_i coeffs[i]·U[i][j]) gens[j]
    let witness: Vec<BigInt> = (0..gens.len())
        .map(|j| coeffs.iter().zip(&u).map(|(c, urow)| c * &urow[j]).sum())
        .collect();
    debug_assert!(combination(gens, &witness) == *target);
    Membership { member: true, witness: Some(witness) }
}

/// `Σ coeffs[i]·gens[i]`.
pub fn combination(gens: &[IntRow], coeffs: &[BigInt]) -> IntRow {
    let n = gens.first().map_or(0, Vec::len);
    let mut out = vec![BigInt::zero(); n];
    for (g, c) in gens.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(g) {
            *o += x * c;
        }
    }
    out
}

pub fn transpose(a: &IntMatrix) -> IntMatrix {
    let n = a.first().map_or(0, Vec::len);
    (0..n).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// ℤ-basis of `{x ∈ ℤⁿ : A·x = 0}`, taken from the unimodular transform of
/// the Hermite form of `Aᵀ`; such a basis is automatically saturated.
pub fn integer_kernel(a: &IntMatrix, n: usize) -> Vec<IntRow> {
    if a.is_empty() {
        return identity(n);
    }
    let (h, u) = hnf(&transpose(a));
    let rank = hnf_rank(&h);
    u.into_iter().skip(rank).collect()
}

/// Diagonal of the Smith normal form (nonzero invariant factors, in order).
pub fn smith_diagonal(a: &IntMatrix) -> Vec<BigInt> {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block moves to (t, t)
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_floor(&m[t][t]);
                sub_multiple(&mut m, i, t, &q);
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for row in m.iter_mut() {
                        let v = &row[t] * &q;
                        row[j] -= v;
                    }
                }
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                let mut best = (t, t);
                for i in t..rows {
                    if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                m.swap(t, best.0);
                for row in m.iter_mut() {
                    row.swap(t, best.1);
                }
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&m[i][j] % &m[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    for j in 0..cols {
                        let v = m[i][j].clone();
                        m[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(m[t][t].abs());
    }
    out
}

/// A family of integer vectors spans a primitive (saturated) sublattice iff
/// all of its Smith invariants are one.
pub fn is_saturated(basis: &[IntRow]) -> bool {
    smith_diagonal(&basis.to_vec()).iter().all(One::is_one)
}
