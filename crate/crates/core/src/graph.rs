//! Oriented multigraphs: loops and parallel edges allowed, dense ids.

use std::collections::HashSet;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub origin: VertexId,
    pub tail: VertexId,
}

impl Edge {
    pub fn new(origin: VertexId, tail: VertexId) -> Self {
        Edge { origin, tail }
    }

    pub fn is_loop(&self) -> bool {
        self.origin == self.tail
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge}: endpoint {vertex} out of range for {vertex_count} vertices")]
    EndpointOutOfRange {
        edge: EdgeId,
        vertex: VertexId,
        vertex_count: usize,
    },
    #[error("edge id {0} out of range")]
    EdgeOutOfRange(EdgeId),
    #[error("vertex id {0} out of range")]
    VertexOutOfRange(VertexId),
}

/// Immutable oriented multigraph.
///
/// Outgoing adjacency lists keep input edge order; the verifier's traversal
/// order (and therefore its counters and witnesses) depends on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    out: Vec<Vec<EdgeId>>,
}

impl OrientedGraph {
    pub fn new(vertex_count: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let mut out = vec![Vec::new(); vertex_count];
        for (id, e) in edges.iter().enumerate() {
            for v in [e.origin, e.tail] {
                if v >= vertex_count {
                    return Err(GraphError::EndpointOutOfRange {
                        edge: id,
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            out[e.origin].push(id);
        }
        Ok(OrientedGraph {
            vertex_count,
            edges,
            out,
        })
    }

    pub fn from_pairs(vertex_count: usize, pairs: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        Self::new(vertex_count, pairs.iter().map(|&(o, t)| Edge::new(o, t)).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    pub fn try_edge(&self, e: EdgeId) -> Result<Edge, GraphError> {
        self.edges.get(e).copied().ok_or(GraphError::EdgeOutOfRange(e))
    }

    pub fn origin(&self, e: EdgeId) -> VertexId {
        self.edges[e].origin
    }

    pub fn tail(&self, e: EdgeId) -> VertexId {
        self.edges[e].tail
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        self.edges[e].is_loop()
    }

    /// Outgoing edges of `v` in insertion order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v]
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_loop()).count()
    }

    /// Loop edges in ascending id order.
    pub fn loops(&self) -> Vec<EdgeId> {
        (0..self.edges.len()).filter(|&e| self.is_loop(e)).collect()
    }

    /// Copy of the graph with every loop dropped. Remaining edges keep their
    /// relative order; ids are renumbered densely.
    pub fn without_loops(&self) -> OrientedGraph {
        let edges = self.edges.iter().copied().filter(|e| !e.is_loop()).collect();
        OrientedGraph::new(self.vertex_count, edges).expect("subgraph endpoints stay in range")
    }

    /// Every strongly connected component is a single vertex (loops allowed).
    pub fn is_quasi_acyclic(&self) -> bool {
        let mut g = DiGraph::<(), ()>::with_capacity(self.vertex_count, self.edges.len());
        let nodes: Vec<_> = (0..self.vertex_count).map(|_| g.add_node(())).collect();
        for e in self.edges.iter().filter(|e| !e.is_loop()) {
            g.add_edge(nodes[e.origin], nodes[e.tail], ());
        }
        tarjan_scc(&g).iter().all(|scc| scc.len() == 1)
    }

    /// No loop-free oriented path of length 3.
    pub fn is_two_path_bounded(&self) -> bool {
        let mut has_in = vec![false; self.vertex_count];
        let mut has_out = vec![false; self.vertex_count];
        for e in self.edges.iter().filter(|e| !e.is_loop()) {
            has_out[e.origin] = true;
            has_in[e.tail] = true;
        }
        // a middle edge with a predecessor and a successor gives length 3
        !self
            .edges
            .iter()
            .filter(|e| !e.is_loop())
            .any(|e| has_in[e.origin] && has_out[e.tail])
    }

    /// Non-loop edges `a, b, c` with `o(a) = o(b)`, `t(b) = o(c)`, `t(c) = t(a)`.
    pub fn has_triangle(&self) -> bool {
        let direct: HashSet<(VertexId, VertexId)> = self
            .edges
            .iter()
            .filter(|e| !e.is_loop())
            .map(|e| (e.origin, e.tail))
            .collect();
        self.edges.iter().filter(|b| !b.is_loop()).any(|b| {
            self.out[b.tail]
                .iter()
                .map(|&c| self.edges[c])
                .filter(|c| !c.is_loop())
                .any(|c| direct.contains(&(b.origin, c.tail)))
        })
    }

    /// Two distinct non-loop edges with the same origin and tail.
    pub fn has_multiple_edges(&self) -> bool {
        let mut seen = HashSet::new();
        self.edges
            .iter()
            .filter(|e| !e.is_loop())
            .any(|e| !seen.insert((e.origin, e.tail)))
    }
}

/// Edge sequence with explicit endpoints, so empty paths carry a location.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    pub origin: VertexId,
    pub tail: VertexId,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn empty(v: VertexId) -> Self {
        Path {
            origin: v,
            tail: v,
            edges: Vec::new(),
        }
    }

    /// Builds a non-empty path, checking that consecutive edges compose.
    pub fn from_edges(g: &OrientedGraph, edges: Vec<EdgeId>) -> Option<Path> {
        let first = *edges.first()?;
        let last = *edges.last()?;
        let path = Path {
            origin: g.try_edge(first).ok()?.origin,
            tail: g.try_edge(last).ok()?.tail,
            edges,
        };
        path.is_valid_in(g).then_some(path)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_valid_in(&self, g: &OrientedGraph) -> bool {
        if self.origin >= g.vertex_count() || self.tail >= g.vertex_count() {
            return false;
        }
        if self.edges.iter().any(|&e| e >= g.edge_count()) {
            return false;
        }
        match (self.edges.first(), self.edges.last()) {
            (None, None) => self.origin == self.tail,
            (Some(&first), Some(&last)) => {
                g.origin(first) == self.origin
                    && g.tail(last) == self.tail
                    && self.edges.windows(2).all(|w| g.tail(w[0]) == g.origin(w[1]))
            }
            _ => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(n: usize, pairs: &[(usize, usize)]) -> OrientedGraph {
        OrientedGraph::from_pairs(n, pairs).unwrap()
    }

    #[test]
    fn build_small() {
        let one = g(2, &[(0, 1)]);
        assert_eq!(one.edge_count(), 1);
        assert_eq!(one.out_edges(0), &[0]);
        let lp = g(1, &[(0, 0)]);
        assert_eq!(lp.loop_count(), 1);
        assert!(lp.is_loop(0));
    }

    #[test]
    fn out_of_range_endpoint() {
        assert_eq!(
            OrientedGraph::from_pairs(2, &[(0, 1), (1, 2)]),
            Err(GraphError::EndpointOutOfRange {
                edge: 1,
                vertex: 2,
                vertex_count: 2
            })
        );
    }

    #[test]
    fn adjacency_keeps_insertion_order() {
        let gr = g(3, &[(0, 2), (1, 0), (0, 1), (0, 2)]);
        assert_eq!(gr.out_edges(0), &[0, 2, 3]);
        assert_eq!(gr.out_edges(1), &[1]);
    }

    #[test]
    fn quasi_acyclic() {
        assert!(!g(2, &[(0, 1), (1, 0)]).is_quasi_acyclic());
        assert!(g(1, &[(0, 0)]).is_quasi_acyclic());
        assert!(g(3, &[(0, 1), (1, 2), (0, 2), (2, 2)]).is_quasi_acyclic());
        assert!(!g(3, &[(0, 1), (1, 2), (2, 0)]).is_quasi_acyclic());
    }

    #[test]
    fn two_path_bounded() {
        assert!(!g(4, &[(0, 1), (1, 2), (2, 3)]).is_two_path_bounded());
        assert!(g(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]).is_two_path_bounded());
        // loops do not extend paths
        assert!(g(3, &[(0, 1), (1, 1), (1, 2), (2, 2)]).is_two_path_bounded());
        // a 2-cycle already yields a loop-free walk of length 3
        assert!(!g(2, &[(0, 1), (1, 0)]).is_two_path_bounded());
    }

    #[test]
    fn triangles() {
        assert!(g(3, &[(0, 1), (1, 2), (0, 2)]).has_triangle());
        assert!(!g(1, &[]).has_triangle());
        assert!(!g(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]).has_triangle());
    }

    #[test]
    fn multiple_edges() {
        assert!(g(2, &[(0, 1), (0, 1)]).has_multiple_edges());
        assert!(!g(1, &[(0, 0), (0, 0)]).has_multiple_edges());
        assert!(!g(2, &[(0, 1), (1, 0)]).has_multiple_edges());
    }

    #[test]
    fn loops_and_stripping() {
        let gr = g(3, &[(0, 0), (0, 1), (1, 1), (1, 2)]);
        assert_eq!(gr.loop_count(), 2);
        assert_eq!(gr.loops(), vec![0, 2]);
        let stripped = gr.without_loops();
        assert_eq!(stripped.edges(), &[Edge::new(0, 1), Edge::new(1, 2)]);
        assert_eq!(g(2, &[(0, 1)]).loop_count(), 0);
    }

    #[test]
    fn paths() {
        let gr = g(3, &[(0, 1), (1, 2), (0, 2)]);
        let p = Path::from_edges(&gr, vec![0, 1]).unwrap();
        assert_eq!((p.origin, p.tail), (0, 2));
        assert!(Path::from_edges(&gr, vec![1, 0]).is_none());
        assert!(Path::from_edges(&gr, vec![]).is_none());
        assert!(Path::empty(1).is_valid_in(&gr));
        let bogus = Path {
            origin: 0,
            tail: 1,
            edges: vec![],
        };
        assert!(!bogus.is_valid_in(&gr));
    }

    proptest! {
        #[test]
        fn build_reads_back(n in 1usize..8, raw in prop::collection::vec((0usize..8, 0usize..8), 0..20)) {
            let pairs: Vec<_> = raw.into_iter().map(|(a, b)| (a % n, b % n)).collect();
            let gr = g(n, &pairs);
            let back: Vec<_> = gr.edges().iter().map(|e| (e.origin, e.tail)).collect();
            prop_assert_eq!(&back, &pairs);
            let total: usize = (0..n).map(|v| gr.out_edges(v).len()).sum();
            prop_assert_eq!(total, pairs.len());
            for v in 0..n {
                for &e in gr.out_edges(v) {
                    prop_assert_eq!(gr.origin(e), v);
                }
            }
        }
    }
}
