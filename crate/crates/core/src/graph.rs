//! Labeled directed graphs and vertex bitsets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alphabet::Symbol;
use crate::error::{Error, Result};

/// Fixed-capacity set of vertex indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        Self { bits: vec![0; n.div_ceil(64).max(1)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn singleton(n: usize, v: usize) -> Self {
        let mut s = Self::empty(n);
        s.insert(v);
        s
    }

    pub fn insert(&mut self, v: usize) {
        self.bits[v / 64] |= 1 << (v % 64);
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.get(v / 64).is_some_and(|b| b & (1 << (v % 64)) != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(&other.bits).any(|(a, b)| a & b != 0)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet { bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect() }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &b)| {
            (0..64).filter(move |i| b & (1u64 << i) != 0).map(move |i| w * 64 + i)
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub label: Symbol,
}

/// Directed multigraph with symbol-labeled edges. Vertices are `0..names.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    names: Vec<String>,
    edges: Vec<Edge>,
}

impl LabeledGraph {
    pub fn new(names: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        for e in &edges {
            for v in [e.src, e.dst] {
                if v >= names.len() {
                    return Err(Error::UnknownVertex(v.to_string()));
                }
            }
        }
        Ok(Self { names, edges })
    }

    /// Builds a graph from named endpoints.
    pub fn from_named<S: AsRef<str>>(names: &[S], edges: &[(S, S, Symbol)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let find = |id: &str| {
            names
                .iter()
                .position(|n| n == id)
                .ok_or_else(|| Error::UnknownVertex(id.to_string()))
        };
        let edges = edges
            .iter()
            .map(|(s, d, l)| Ok(Edge { src: find(s.as_ref())?, dst: find(d.as_ref())?, label: *l }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Iteratively removes vertices lacking an incoming or an outgoing edge,
    /// so that every remaining finite walk extends to a bi-infinite one.
    pub fn essentialize(&self) -> LabeledGraph {
        let n = self.names.len();
        let mut alive = vec![true; n];
        loop {
            let mut has_in = vec![false; n];
            let mut has_out = vec![false; n];
            for e in &self.edges {
                if alive[e.src] && alive[e.dst] {
                    has_out[e.src] = true;
                    has_in[e.dst] = true;
                }
            }
            let mut changed = false;
            for v in 0..n {
                if alive[v] && !(has_in[v] && has_out[v]) {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut remap = vec![usize::MAX; n];
        let mut names = Vec::new();
        for v in (0..n).filter(|&v| alive[v]) {
            remap[v] = names.len();
            names.push(self.names[v].clone());
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| alive[e.src] && alive[e.dst])
            .map(|e| Edge { src: remap[e.src], dst: remap[e.dst], label: e.label })
            .collect();
        LabeledGraph { names, edges }
    }

    pub fn is_essential(&self) -> bool {
        let n = self.names.len();
        let mut has_in = vec![false; n];
        let mut has_out = vec![false; n];
        for e in &self.edges {
            has_out[e.src] = true;
            has_in[e.dst] = true;
        }
        (0..n).all(|v| has_in[v] && has_out[v])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_set_basics() {
        let mut s = VertexSet::empty(130);
        assert!(s.is_empty());
        s.insert(3);
        s.insert(129);
        assert_eq!(s.to_vec(), vec![3, 129]);
        assert_eq!(s.len(), 2);
        assert!(s.intersects(&VertexSet::singleton(130, 129)));
        assert!(!s.contains(4));
        assert_eq!(VertexSet::full(3).to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn isolated_vertex_is_trimmed() {
        let g = LabeledGraph::from_named(&["a", "b"], &[("a", "a", 0)]).unwrap();
        let e = g.essentialize();
        assert_eq!(e.names(), &["a".to_string()]);
        assert_eq!(e.edges().len(), 1);
    }

    #[test]
    fn acyclic_chain_trims_to_nothing() {
        let g = LabeledGraph::from_named(&["a", "b", "c"], &[("a", "b", 0), ("b", "c", 1)]).unwrap();
        assert!(g.essentialize().is_empty());
    }

    #[test]
    fn graph_with_loops_is_unchanged() {
        let g = LabeledGraph::from_named(&["l", "r"], &[("l", "l", 1), ("l", "l", 0), ("r", "r", 2), ("r", "r", 0)])
            .unwrap();
        assert!(g.is_essential());
        assert_eq!(g.essentialize(), g);
    }

    #[test]
    fn tail_into_cycle_is_trimmed() {
        // t -> a <-> b: t has no incoming edge.
        let g = LabeledGraph::from_named(&["t", "a", "b"], &[("t", "a", 0), ("a", "b", 1), ("b", "a", 1)]).unwrap();
        let e = g.essentialize();
        assert_eq!(e.names(), &["a".to_string(), "b".to_string()]);
        assert_eq!(e.edges().len(), 2);
    }

    #[test]
    fn unknown_vertex_is_rejected() {
        assert!(matches!(
            LabeledGraph::from_named(&["a"], &[("a", "z", 0)]),
            Err(Error::UnknownVertex(_))
        ));
    }
}
