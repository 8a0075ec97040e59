//! Recognition of irreducible ADE root lattices from a Cartan-type Gram matrix.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::gram::{signature, GramLattice};
use super::LatticeError;
use crate::graph::{isomorphism, WeightedGraph};
use crate::scalars::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootFamily {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootType {
    pub family: RootFamily,
    pub rank: usize,
}

impl RootType {
    pub fn new(family: RootFamily, rank: usize) -> Option<Self> {
        let ok = match family {
            RootFamily::A => rank >= 1,
            RootFamily::D => rank >= 4,
            RootFamily::E => (6..=8).contains(&rank),
        };
        ok.then_some(RootType { family, rank })
    }

    /// Edges of the Dynkin diagram on nodes `0..rank` (Bourbaki numbering
    /// shifted down by one).
    pub fn dynkin_edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            RootFamily::A => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
            RootFamily::D => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            RootFamily::E => {
                // 1-3-4-5-...-n with 2 attached to 4
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    fn graph(&self) -> WeightedGraph {
        let mut g = WeightedGraph::plain(self.rank);
        for (i, j) in self.dynkin_edges() {
            g.add_edge(i, j, 1);
        }
        g
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl Serialize for RootType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Cartan matrix (diagonal 2, −1 on Dynkin edges) as a Gram lattice.
pub fn cartan_matrix(t: RootType) -> GramLattice {
    let n = t.rank;
    let mut g = vec![vec![Rational::zero(); n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = Rational::from_integer(2.into());
    }
    for (i, j) in t.dynkin_edges() {
        g[i][j] = -Rational::one();
        g[j][i] = -Rational::one();
    }
    GramLattice::from_ints(
        "a",
        &g.iter().map(|r| r.iter().map(|q| q.to_integer().try_into().unwrap()).collect()).collect::<Vec<_>>(),
    )
    .expect("symmetric")
}

/// The irreducible ADE type whose Dynkin diagram is the graph of `−1`
/// entries, or `None` when no type matches (including non-definite or
/// disconnected input).
pub fn dynkin_classify(lat: &GramLattice) -> Result<Option<RootType>, LatticeError> {
    let n = lat.dim();
    let two = Rational::from_integer(2.into());
    let mut g = WeightedGraph::new(lat.labels().to_vec(), vec![1; n]);
    for i in 0..n {
        if lat.entry(i, i) != &two {
            return Err(LatticeError::NotRootBasis(format!("diagonal entry {i} is {}", lat.entry(i, i))));
        }
        for j in i + 1..n {
            let e = lat.entry(i, j);
            if e == &-Rational::one() {
                g.add_edge(i, j, 1);
            } else if !e.is_zero() {
                return Err(LatticeError::NotRootBasis(format!("off-diagonal entry ({i}, {j}) is {e}")));
            }
        }
    }
    if n == 0 || !g.is_connected() || signature(lat).plus != n {
        return Ok(None);
    }
    let candidates = [
        RootType::new(RootFamily::A, n),
        RootType::new(RootFamily::D, n),
        RootType::new(RootFamily::E, n),
    ];
    let seq = g.degree_sequence();
    for t in candidates.into_iter().flatten() {
        let tg = t.graph();
        if tg.degree_sequence() == seq && isomorphism(&g, &tg).is_some() {
            return Ok(Some(t));
        }
    }
    Ok(None)
}
