//! Commutativity verification with exact operation counts.
//!
//! The run has three phases on a private working copy of the adjacency:
//!
//! 1. every loop is compared against the identity and dropped;
//! 2. per origin vertex, every parallel edge is compared against the first
//!    edge to the same tail and dropped, leaving a simple graph `E'`;
//! 3. from every root in ascending order a depth-first search stores
//!    `m(u) = l(tree path root→u)` for newly reached vertices and checks
//!    `m(u) = m(v)·l(e)` for every edge `e: v→u` into an already reached one.
//!
//! Each extension `m(v)·l(e)` costs one multiplication, each check one
//! equality test. Visited marks and `m` values are reset for every root.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::diagram::Diagram;
use crate::graph::{EdgeId, GraphError, Path, VertexId};
use crate::monoid::Monoid;

/// Exact operation counters of one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Counters {
    pub eq_loops: u64,
    pub eq_multi: u64,
    pub eq_dfs: u64,
    pub mult_dfs: u64,
    /// Edges left in the working graph when the run stopped; `|E'|` once both
    /// reduction phases completed.
    pub reduced_edges: u64,
}

impl Counters {
    pub fn eq_total(&self) -> u64 {
        self.eq_loops + self.eq_multi + self.eq_dfs
    }

    pub fn mult_total(&self) -> u64 {
        self.mult_dfs
    }
}

/// A concrete violation of commutativity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A loop whose label is not the identity.
    NonIdentityLoop { edge: EdgeId },
    /// Two parallel non-loop edges with different labels.
    MultiEdgeMismatch { kept: EdgeId, duplicate: EdgeId },
    /// Two paths with equal endpoints and different labels.
    PathMismatch { first: Path, second: Path },
}

/// A relation `l(left) = l(right)` that was checked.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Relation {
    pub left: Vec<EdgeId>,
    pub right: Vec<EdgeId>,
}

/// A multiplication step producing `left ∘ right`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Product {
    pub left: Vec<EdgeId>,
    pub right: Vec<EdgeId>,
}

impl Product {
    pub fn result(&self) -> Vec<EdgeId> {
        let mut seq = self.left.clone();
        seq.extend_from_slice(&self.right);
        seq
    }
}

/// Every equality check and multiplication of a run, as edge sequences.
/// Together the relations form a complete relation system for the graph
/// when the run accepts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTrace {
    pub relations: Vec<Relation>,
    pub products: Vec<Product>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    pub trace: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub commutative: bool,
    pub counters: Counters,
    pub witness: Option<Witness>,
    pub trace: Option<RelationTrace>,
}

impl VerificationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "commutative": self.commutative,
            "counters": self.counters,
            "witness": self.witness,
            "trace": self.trace,
        })
    }

    /// Checks both the `|E'|`-refined and the closed-form operation bounds.
    pub fn within_bounds(&self, vertices: usize, edges: usize) -> bool {
        let c = &self.counters;
        let n = vertices as u128;
        let m = edges as u128;
        let reduced = c.reduced_edges as u128;
        let eq = c.eq_total() as u128;
        let mult = c.mult_total() as u128;
        eq <= refined_bound_eq_checks(n, reduced, m)
            && refined_bound_eq_checks(n, reduced, m) <= bound_eq_checks(n, m)
            && mult <= refined_bound_mults(n, reduced)
            && refined_bound_mults(n, reduced) <= bound_mults(n, m)
    }
}

/// `min(n², m)·min(n, m+1)`.
pub fn bound_mults(n: u128, m: u128) -> u128 {
    (n * n).min(m) * n.min(m + 1)
}

/// `min(n², m)·min(n, m+1) + m`.
pub fn bound_eq_checks(n: u128, m: u128) -> u128 {
    bound_mults(n, m) + m
}

/// `|E'|·min(n, |E'|+1)`.
pub fn refined_bound_mults(n: u128, reduced: u128) -> u128 {
    reduced * n.min(reduced + 1)
}

/// `|E'|·min(n, |E'|+1) + m`.
pub fn refined_bound_eq_checks(n: u128, reduced: u128, m: u128) -> u128 {
    refined_bound_mults(n, reduced) + m
}

/// Mutable state of one verification run over a borrowed diagram.
///
/// The phases are exposed individually; [`verify`] runs them in order.
pub struct Verification<'a, M: Monoid> {
    diagram: &'a Diagram<M>,
    out: Vec<Vec<EdgeId>>,
    counters: Counters,
    trace: Option<RelationTrace>,
    // DFS scratch, reused across roots
    epoch: u64,
    visited: Vec<u64>,
    value: Vec<Option<M::Element>>,
    parent: Vec<Option<EdgeId>>,
    prefix: Vec<Vec<EdgeId>>,
    // multi-edge scratch: (stamp, first edge) per tail vertex
    first_to: Vec<(u64, EdgeId)>,
}

impl<'a, M: Monoid> Verification<'a, M> {
    pub fn new(diagram: &'a Diagram<M>, options: VerifyOptions) -> Self {
        let g = diagram.graph();
        let n = g.vertex_count();
        Verification {
            diagram,
            out: (0..n).map(|v| g.out_edges(v).to_vec()).collect(),
            counters: Counters {
                reduced_edges: g.edge_count() as u64,
                ..Counters::default()
            },
            trace: options.trace.then(RelationTrace::default),
            epoch: 0,
            visited: vec![0; n],
            value: vec![None; n],
            parent: vec![None; n],
            prefix: if options.trace { vec![Vec::new(); n] } else { Vec::new() },
            first_to: vec![(0, 0); n],
        }
    }

    pub fn counters(&self) -> &Counters {
        &self.counters
    }

    pub fn trace(&self) -> Option<&RelationTrace> {
        self.trace.as_ref()
    }

    /// Outgoing edges of `v` still present in the working graph.
    pub fn working_out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v]
    }

    fn record_relation(&mut self, left: Vec<EdgeId>, right: Vec<EdgeId>) {
        if let Some(t) = self.trace.as_mut() {
            t.relations.push(Relation { left, right });
        }
    }

    fn sync_edge_count(&mut self) {
        self.counters.reduced_edges = self.out.iter().map(|o| o.len() as u64).sum();
    }

    /// Checks every loop against the identity and removes it.
    pub fn remove_loops(&mut self) -> Option<Witness> {
        let d = self.diagram;
        let g = d.graph();
        let identity = d.monoid().identity();
        for v in 0..self.out.len() {
            let mut edges = std::mem::take(&mut self.out[v]);
            let mut kept = 0;
            for i in 0..edges.len() {
                let e = edges[i];
                if g.tail(e) == v {
                    self.counters.eq_loops += 1;
                    self.record_relation(vec![e], Vec::new());
                    if !d.monoid().equals(d.label(e), &identity) {
                        edges.drain(kept..i);
                        self.out[v] = edges;
                        self.sync_edge_count();
                        return Some(Witness::NonIdentityLoop { edge: e });
                    }
                } else {
                    edges[kept] = e;
                    kept += 1;
                }
            }
            edges.truncate(kept);
            self.out[v] = edges;
        }
        self.sync_edge_count();
        None
    }

    /// Checks every parallel edge against the first edge with the same
    /// endpoints and removes it. Expects a loop-free working graph.
    pub fn remove_multiple_edges(&mut self) -> Option<Witness> {
        let d = self.diagram;
        let g = d.graph();
        self.first_to.fill((0, 0));
        for v in 0..self.out.len() {
            let stamp = v as u64 + 1;
            let mut edges = std::mem::take(&mut self.out[v]);
            let mut kept = 0;
            for i in 0..edges.len() {
                let e = edges[i];
                let u = g.tail(e);
                let (seen, first) = self.first_to[u];
                if seen != stamp {
                    self.first_to[u] = (stamp, e);
                    edges[kept] = e;
                    kept += 1;
                    continue;
                }
                self.counters.eq_multi += 1;
                self.record_relation(vec![e], vec![first]);
                if !d.monoid().equals(d.label(e), d.label(first)) {
                    edges.drain(kept..i);
                    self.out[v] = edges;
                    self.sync_edge_count();
                    return Some(Witness::MultiEdgeMismatch { kept: first, duplicate: e });
                }
            }
            edges.truncate(kept);
            self.out[v] = edges;
        }
        self.sync_edge_count();
        None
    }

    fn tree_path(&self, root: VertexId, to: VertexId) -> Path {
        let g = self.diagram.graph();
        let mut edges = Vec::new();
        let mut at = to;
        while at != root {
            let e = self.parent[at].expect("reached vertices have a tree parent");
            edges.push(e);
            at = g.origin(e);
        }
        edges.reverse();
        Path {
            origin: root,
            tail: to,
            edges,
        }
    }

    /// Depth-first search from `root` over the working graph.
    pub fn dfs_check(&mut self, root: VertexId) -> Result<Option<Witness>, GraphError> {
        let d = self.diagram;
        let g = d.graph();
        let monoid = d.monoid();
        if root >= self.out.len() {
            return Err(GraphError::VertexOutOfRange(root));
        }
        self.epoch += 1;
        let epoch = self.epoch;
        self.visited[root] = epoch;
        self.value[root] = Some(monoid.identity());
        self.parent[root] = None;
        if self.trace.is_some() {
            self.prefix[root].clear();
        }

        // (vertex, index of the next outgoing edge to scan)
        let mut stack: Vec<(VertexId, usize)> = vec![(root, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, next) = *top;
            let Some(&e) = self.out[v].get(next) else {
                stack.pop();
                continue;
            };
            top.1 += 1;
            let u = g.tail(e);
            let extended = monoid.op(
                self.value[v].as_ref().expect("reached vertices carry a value"),
                d.label(e),
            );
            self.counters.mult_dfs += 1;
            let extended_seq = self.trace.as_mut().map(|t| {
                t.products.push(Product {
                    left: self.prefix[v].clone(),
                    right: vec![e],
                });
                let mut seq = self.prefix[v].clone();
                seq.push(e);
                seq
            });

            if self.visited[u] != epoch {
                self.visited[u] = epoch;
                self.value[u] = Some(extended);
                self.parent[u] = Some(e);
                if let Some(seq) = extended_seq {
                    self.prefix[u] = seq;
                }
                stack.push((u, 0));
            } else {
                self.counters.eq_dfs += 1;
                if let Some(seq) = extended_seq {
                    let right = self.prefix[u].clone();
                    self.record_relation(seq, right);
                }
                let stored = self.value[u].as_ref().expect("reached vertices carry a value");
                if !monoid.equals(stored, &extended) {
                    let mut first = self.tree_path(root, v);
                    first.edges.push(e);
                    first.tail = u;
                    return Ok(Some(Witness::PathMismatch {
                        first,
                        second: self.tree_path(root, u),
                    }));
                }
            }
        }
        Ok(None)
    }

    fn run(&mut self) -> Option<Witness> {
        if let Some(w) = self.remove_loops() {
            return Some(w);
        }
        if let Some(w) = self.remove_multiple_edges() {
            return Some(w);
        }
        for root in 0..self.out.len() {
            if let Some(w) = self.dfs_check(root).expect("roots are in range") {
                return Some(w);
            }
        }
        None
    }

    pub fn finish(self, witness: Option<Witness>) -> VerificationReport {
        VerificationReport {
            commutative: witness.is_none(),
            counters: self.counters,
            witness,
            trace: self.trace,
        }
    }
}

/// Decides whether `diagram` is commutative, stopping at the first violation.
pub fn verify<M: Monoid>(diagram: &Diagram<M>, options: VerifyOptions) -> VerificationReport {
    let mut run = Verification::new(diagram, options);
    let witness = run.run();
    run.finish(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::OrientedGraph;
    use crate::monoid::{AdditiveMonoid, AdditiveNumber, FreeMonoid, FreeWord, IntMatrix, MatrixMonoid};

    fn additive(n: usize, pairs: &[(usize, usize)], labels: &[i64]) -> Diagram<AdditiveMonoid> {
        Diagram::new(
            OrientedGraph::from_pairs(n, pairs).unwrap(),
            AdditiveMonoid,
            labels.iter().map(|&x| AdditiveNumber::integer(x)).collect(),
        )
        .unwrap()
    }

    fn free(n: usize, pairs: &[(usize, usize)], labels: &[&[u32]]) -> Diagram<FreeMonoid> {
        Diagram::new(
            OrientedGraph::from_pairs(n, pairs).unwrap(),
            FreeMonoid,
            labels.iter().map(|w| FreeWord(w.to_vec())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn bound_formulas() {
        assert_eq!(bound_eq_checks(11, 16), 192);
        assert_eq!(bound_mults(11, 16), 176);
        assert_eq!(bound_eq_checks(4, 0), 0);
        assert_eq!(bound_mults(4, 0), 0);
        assert_eq!(bound_eq_checks(2, 100), 108);
        assert_eq!(refined_bound_mults(3, 2), 6);
        assert_eq!(refined_bound_eq_checks(5, 2, 7), 13);
    }

    #[test]
    fn identity_loop_is_removed() {
        let d = Diagram::new(
            OrientedGraph::from_pairs(1, &[(0, 0)]).unwrap(),
            MatrixMonoid { k: 2 },
            vec![IntMatrix::identity(2)],
        )
        .unwrap();
        let mut run = Verification::new(&d, VerifyOptions::default());
        assert_eq!(run.remove_loops(), None);
        assert!(run.working_out_edges(0).is_empty());
        assert_eq!(run.counters().eq_loops, 1);
    }

    #[test]
    fn unitriangular_loop_is_rejected() {
        let d = Diagram::new(
            OrientedGraph::from_pairs(1, &[(0, 0)]).unwrap(),
            MatrixMonoid { k: 2 },
            vec![IntMatrix::upper_unitriangular(1)],
        )
        .unwrap();
        let mut run = Verification::new(&d, VerifyOptions::default());
        assert_eq!(run.remove_loops(), Some(Witness::NonIdentityLoop { edge: 0 }));
    }

    #[test]
    fn loopless_graph_needs_no_loop_checks() {
        let d = additive(2, &[(0, 1)], &[4]);
        let mut run = Verification::new(&d, VerifyOptions::default());
        assert_eq!(run.remove_loops(), None);
        assert_eq!(run.counters().eq_loops, 0);
    }

    #[test]
    fn parallel_edges() {
        let d = free(2, &[(0, 1), (0, 1)], &[&[5], &[5]]);
        let mut run = Verification::new(&d, VerifyOptions::default());
        assert_eq!(run.remove_loops(), None);
        assert_eq!(run.remove_multiple_edges(), None);
        assert_eq!(run.counters().eq_multi, 1);
        assert_eq!(run.working_out_edges(0), &[0]);
        assert_eq!(run.counters().reduced_edges, 1);

        let d = free(2, &[(0, 1), (0, 1)], &[&[0], &[1]]);
        let mut run = Verification::new(&d, VerifyOptions::default());
        run.remove_loops();
        assert_eq!(
            run.remove_multiple_edges(),
            Some(Witness::MultiEdgeMismatch { kept: 0, duplicate: 1 })
        );

        let d = free(3, &[(0, 1), (1, 2)], &[&[0], &[1]]);
        let mut run = Verification::new(&d, VerifyOptions::default());
        run.remove_loops();
        assert_eq!(run.remove_multiple_edges(), None);
        assert_eq!(run.counters().eq_multi, 0);
    }

    #[test]
    fn triangle_dfs() {
        let pairs = [(0, 1), (1, 2), (0, 2)];
        let d = additive(3, &pairs, &[1, 2, 3]);
        let mut run = Verification::new(&d, VerifyOptions::default());
        assert_eq!(run.dfs_check(0), Ok(None));
        // tree edges a, b then one check on c
        assert_eq!(run.counters().mult_dfs, 3);
        assert_eq!(run.counters().eq_dfs, 1);

        let d = free(3, &pairs, &[&[0], &[1], &[2]]);
        let mut run = Verification::new(&d, VerifyOptions::default());
        assert_eq!(
            run.dfs_check(0),
            Ok(Some(Witness::PathMismatch {
                first: Path { origin: 0, tail: 2, edges: vec![2] },
                second: Path { origin: 0, tail: 2, edges: vec![0, 1] },
            }))
        );
        assert_eq!(run.dfs_check(7), Err(GraphError::VertexOutOfRange(7)));
    }

    #[test]
    fn rhomboid_gap_dfs() {
        // a: 0→1, b: 1→3, c: 0→2, d: 2→3
        let d = Diagram::new(
            OrientedGraph::from_pairs(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap(),
            MatrixMonoid { k: 3 },
            vec![IntMatrix::unit(3, 1, 2), IntMatrix::unit(3, 2, 3), IntMatrix::zero(3), IntMatrix::zero(3)],
        )
        .unwrap();
        let mut run = Verification::new(&d, VerifyOptions::default());
        let w = run.dfs_check(0).unwrap().unwrap();
        assert_eq!(
            w,
            Witness::PathMismatch {
                first: Path { origin: 0, tail: 3, edges: vec![2, 3] },
                second: Path { origin: 0, tail: 3, edges: vec![0, 1] },
            }
        );
    }

    #[test]
    fn empty_graph() {
        let d = additive(1, &[], &[]);
        let r = verify(&d, VerifyOptions::default());
        assert!(r.commutative);
        assert_eq!(r.counters, Counters::default());
        assert!(r.witness.is_none() && r.trace.is_none());
    }

    #[test]
    fn kirchhoff_square() {
        let d = additive(4, &[(0, 1), (1, 3), (0, 2), (2, 3)], &[5, 7, 4, 8]);
        let r = verify(&d, VerifyOptions::default());
        assert!(r.commutative);
        assert!(r.within_bounds(4, 4));
        let d = additive(4, &[(0, 1), (1, 3), (0, 2), (2, 3)], &[5, 7, 4, 9]);
        assert!(!verify(&d, VerifyOptions::default()).commutative);
    }

    #[test]
    fn cycle_back_to_root_must_be_identity() {
        let d = additive(2, &[(0, 1), (1, 0)], &[3, -3]);
        assert!(verify(&d, VerifyOptions::default()).commutative);
        let d = additive(2, &[(0, 1), (1, 0)], &[3, -2]);
        let r = verify(&d, VerifyOptions::default());
        assert_eq!(
            r.witness,
            Some(Witness::PathMismatch {
                first: Path { origin: 0, tail: 0, edges: vec![0, 1] },
                second: Path::empty(0),
            })
        );
    }

    #[test]
    fn trace_records_every_operation() {
        let d = additive(4, &[(0, 0), (0, 1), (0, 1), (1, 3), (0, 2), (2, 3)], &[0, 5, 5, 7, 4, 8]);
        let r = verify(&d, VerifyOptions { trace: true });
        let t = r.trace.unwrap();
        assert_eq!(t.relations.len() as u64, r.counters.eq_total());
        assert_eq!(t.products.len() as u64, r.counters.mult_total());
        assert_eq!(t.relations[0], Relation { left: vec![0], right: vec![] });
        assert_eq!(t.relations[1], Relation { left: vec![2], right: vec![1] });
        assert_eq!(r.counters.reduced_edges, 4);
    }

    #[test]
    fn report_json_shape() {
        let d = free(2, &[(0, 1), (0, 1)], &[&[0], &[1]]);
        let v = verify(&d, VerifyOptions::default()).to_json();
        assert_eq!(v["commutative"], json!(false));
        assert_eq!(v["counters"]["eq_multi"], json!(1));
        assert_eq!(
            v["witness"],
            json!({"kind": "multi_edge_mismatch", "kept": 0, "duplicate": 1})
        );
        assert_eq!(v["trace"], Value::Null);
    }
}
