use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of vertices; vertex sets are stored as 64-bit masks.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices of a [`SimplicialGraph`], stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        VertexSet(it.into_iter().fold(0, |acc, v| acc | (1 << v)))
    }

    /// The first `n` vertices.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite undirected graph without loops or multiple edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialGraph {
    labels: Vec<String>,
    adjacency: Vec<VertexSet>,
}

impl SimplicialGraph {
    pub fn new<S: Into<String>>(labels: Vec<S>, edges: &[(usize, usize)]) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "{n} vertices exceed the maximum of {MAX_VERTICES}"
            )));
        }
        for (i, label) in labels.iter().enumerate() {
            if label == "e" || label.is_empty() || labels[..i].contains(label) {
                return Err(Error::InvalidGraph(format!("label {label:?} is reserved or repeated")));
            }
        }
        let mut adjacency = vec![VertexSet::EMPTY; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) has an unknown endpoint")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
        Ok(SimplicialGraph { labels, adjacency })
    }

    /// Graph on `n` vertices labelled `a, b, c, ...` without edges.
    pub fn edgeless(n: usize) -> Self {
        SimplicialGraph {
            labels: default_labels(n),
            adjacency: vec![VertexSet::EMPTY; n],
        }
    }

    /// Same vertex set, all edges removed.
    pub fn without_edges(&self) -> Self {
        SimplicialGraph {
            labels: self.labels.clone(),
            adjacency: vec![VertexSet::EMPTY; self.labels.len()],
        }
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimplicialGraph::new(default_labels(n), &edges).expect("cycle graph is simplicial")
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.labels.len())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adjacency[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.vertex_count() {
            for v in self.adjacency[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Common neighbours of `set`; the link of the empty set is every vertex.
    pub fn link(&self, set: VertexSet) -> VertexSet {
        set.iter()
            .fold(self.vertices(), |acc, v| acc.intersection(self.adjacency[v]))
    }

    pub fn is_clique(&self, set: VertexSet) -> bool {
        set.iter()
            .all(|v| set.difference(VertexSet::singleton(v)).is_subset(self.adjacency[v]))
    }

    /// All cliques, grouped by size; index 0 holds the empty clique.
    pub fn cliques(&self) -> Vec<Vec<VertexSet>> {
        let mut by_size: Vec<Vec<VertexSet>> = vec![vec![VertexSet::EMPTY]];
        loop {
            let mut next = Vec::new();
            for &c in by_size.last().unwrap() {
                // extend only by vertices above the current maximum to avoid duplicates
                let floor = c.iter().last().map_or(0, |m| m + 1);
                for v in floor..self.vertex_count() {
                    if c.is_subset(self.adjacency[v]) {
                        let mut ext = c;
                        ext.insert(v);
                        next.push(ext);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort();
            by_size.push(next);
        }
        by_size
    }

    pub fn cliques_of_size(&self, l: usize) -> Vec<VertexSet> {
        self.cliques().into_iter().nth(l).unwrap_or_default()
    }

    pub fn clique_count(&self) -> usize {
        self.cliques().iter().map(Vec::len).sum()
    }

    /// Pairs `(g1, g2)` of disjoint cliques inside `Link(g0)`.
    pub fn comm(&self, g0: VertexSet) -> Result<Vec<(VertexSet, VertexSet)>> {
        if !self.is_clique(g0) {
            return Err(Error::NotAClique(g0.to_vec()));
        }
        let link = self.link(g0);
        let inside: Vec<VertexSet> = self
            .cliques()
            .into_iter()
            .flatten()
            .filter(|c| c.is_subset(link))
            .collect();
        let mut out = Vec::new();
        for &g1 in &inside {
            for &g2 in &inside {
                if g1.is_disjoint(g2) {
                    out.push((g1, g2));
                }
            }
        }
        Ok(out)
    }

    pub fn format_set(&self, set: VertexSet) -> String {
        let names: Vec<&str> = set.iter().map(|v| self.label(v)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// `a, b, ..., z, g26, g27, ...`
/// `a, b, c, d, f, ...`; `e` is kept for the identity.
pub fn default_labels(n: usize) -> Vec<String> {
    let letters: Vec<char> = ('a'..='z').filter(|&c| c != 'e').collect();
    (0..n)
        .map(|i| match letters.get(i) {
            Some(c) => c.to_string(),
            None => format!("g{i}"),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// K5 on a..e plus f joined to d and e.
    fn k5_plus_f() -> SimplicialGraph {
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                edges.push((u, v));
            }
        }
        edges.push((3, 5));
        edges.push((4, 5));
        SimplicialGraph::new(default_labels(6), &edges).unwrap()
    }

    #[test]
    fn edgeless_cliques() {
        let g = SimplicialGraph::edgeless(3);
        let cliques = g.cliques();
        assert_eq!(cliques.len(), 2);
        assert_eq!(g.clique_count(), 4);
        assert_eq!(cliques[0], vec![VertexSet::EMPTY]);
    }

    #[test]
    fn link_of_abc_in_k5_plus_f() {
        let g = k5_plus_f();
        let abc = VertexSet::from_indices([0, 1, 2]);
        assert!(g.is_clique(abc));
        assert_eq!(g.link(abc), VertexSet::from_indices([3, 4]));
        assert_eq!(g.link(VertexSet::EMPTY), g.vertices());
    }

    #[test]
    fn comm_on_edgeless_graph() {
        let g = SimplicialGraph::edgeless(3);
        let pairs = g.comm(VertexSet::EMPTY).unwrap();
        // 4 cliques inside the link; disjoint ordered pairs: (∅,x) 4 + (x,∅) 3 + (x,y) 6
        assert_eq!(pairs.len(), 13);
        let a = VertexSet::singleton(0);
        let b = VertexSet::singleton(1);
        assert!(pairs.contains(&(a, b)));
        assert!(pairs.contains(&(VertexSet::EMPTY, a)));
        assert!(!pairs.contains(&(a, a)));
    }

    #[test]
    fn comm_rejects_non_clique() {
        let g = SimplicialGraph::edgeless(3);
        assert!(matches!(
            g.comm(VertexSet::from_indices([0, 1])),
            Err(Error::NotAClique(_))
        ));
    }

    #[test]
    fn rejects_loops_and_unknown_vertices() {
        assert!(SimplicialGraph::new(vec!["a", "b"], &[(0, 0)]).is_err());
        assert!(SimplicialGraph::new(vec!["a", "b"], &[(0, 2)]).is_err());
    }

    #[test]
    fn pentagon_clique_count() {
        // 1 + 5 vertices + 5 edges
        assert_eq!(SimplicialGraph::cycle(5).clique_count(), 11);
    }
}
