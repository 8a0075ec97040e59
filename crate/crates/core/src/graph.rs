//! Small weighted undirected graphs and brute-force isomorphism.
//!
//! Used for Cartan graphs (≤ 9 nodes) and fiber dual graphs; both are
//! small enough that plain backtracking is instant.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedGraph {
    pub labels: Vec<String>,
    pub node_weights: Vec<u32>,
    /// `(i, j) -> w` with `i < j` and `w > 0`.
    pub edges: BTreeMap<(usize, usize), u32>,
}

impl WeightedGraph {
    pub fn new(labels: Vec<String>, node_weights: Vec<u32>) -> Self {
        assert_eq!(labels.len(), node_weights.len());
        WeightedGraph { labels, node_weights, edges: BTreeMap::new() }
    }

    /// Unlabeled graph with unit node weights.
    pub fn plain(n: usize) -> Self {
        Self::new((0..n).map(|i| i.to_string()).collect(), vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.node_weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.node_weights.is_empty()
    }

    pub fn add_edge(&mut self, i: usize, j: usize, w: u32) {
        if w == 0 || i == j {
            return;
        }
        let key = if i < j { (i, j) } else { (j, i) };
        self.edges.insert(key, w);
    }

    pub fn edge(&self, i: usize, j: usize) -> u32 {
        let key = if i < j { (i, j) } else { (j, i) };
        self.edges.get(&key).copied().unwrap_or(0)
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| j != i && self.edge(i, j) > 0).collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).len()
    }

    /// Sorted degree sequence (counting edge weights as multi-edges).
    pub fn degree_sequence(&self) -> Vec<u32> {
        let mut d: Vec<u32> = (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.edge(i, j)).sum())
            .collect();
        d.sort_unstable();
        d
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in self.neighbors(i) {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Edge list as `(label, label, weight)`.
    pub fn edge_list(&self) -> Vec<(String, String, u32)> {
        self.edges
            .iter()
            .map(|(&(i, j), &w)| (self.labels[i].clone(), self.labels[j].clone(), w))
            .collect()
    }
}

/// A node map `m` with `other[m[i]] ≅ self[i]`, respecting node weights
/// and edge weights, or `None`.
pub fn isomorphism(a: &WeightedGraph, b: &WeightedGraph) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.edges.len() != b.edges.len() || a.degree_sequence() != b.degree_sequence() {
        return None;
    }
    let n = a.len();
    let deg_a: Vec<usize> = (0..n).map(|i| a.degree(i)).collect();
    let deg_b: Vec<usize> = (0..n).map(|i| b.degree(i)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        a: &WeightedGraph,
        b: &WeightedGraph,
        deg_a: &[usize],
        deg_b: &[usize],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if i == a.len() {
            return true;
        }
        for cand in 0..b.len() {
            if used[cand] || deg_a[i] != deg_b[cand] || a.node_weights[i] != b.node_weights[cand] {
                continue;
            }
            if (0..i).any(|k| a.edge(i, k) != b.edge(cand, map[k])) {
                continue;
            }
            map[i] = cand;
            used[cand] = true;
            if go(i + 1, a, b, deg_a, deg_b, map, used) {
                return true;
            }
            used[cand] = false;
        }
        false
    }
    go(0, a, b, &deg_a, &deg_b, &mut map, &mut used).then_some(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> WeightedGraph {
        let mut g = WeightedGraph::plain(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n, 1);
        }
        g
    }

    #[test]
    fn relabeled_cycle_is_isomorphic() {
        let a = cycle(6);
        let perm = [3, 5, 0, 2, 4, 1];
        let mut b = WeightedGraph::plain(6);
        for (&(i, j), &w) in &a.edges {
            b.add_edge(perm[i], perm[j], w);
        }
        let m = isomorphism(&a, &b).unwrap();
        for (&(i, j), &w) in &a.edges {
            assert_eq!(b.edge(m[i], m[j]), w);
        }
    }

    #[test]
    fn path_is_not_cycle() {
        let mut path = WeightedGraph::plain(6);
        for i in 0..5 {
            path.add_edge(i, i + 1, 1);
        }
        assert!(isomorphism(&path, &cycle(6)).is_none());
        assert!(path.is_connected());
    }

    #[test]
    fn node_weights_matter() {
        let mut a = WeightedGraph::new(vec!["x".into(), "y".into()], vec![1, 2]);
        a.add_edge(0, 1, 1);
        let mut b = WeightedGraph::new(vec!["x".into(), "y".into()], vec![1, 1]);
        b.add_edge(0, 1, 1);
        assert!(isomorphism(&a, &b).is_none());
    }
}
