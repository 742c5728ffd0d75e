//! Labelings that sit right at the edge of commutativity.
//!
//! The nilpotent ones (`nz_edge`, `nz_pair`) make every product of three
//! labels vanish, so only paths of length at most two carry information.
//! `rhomboid_gap` breaks exactly one square. `loop_indicator` and
//! `loop_kernel` put all the weight on loops.

use num_bigint::BigInt;
use thiserror::Error;

use crate::constructions::{is_rhomboid, Rhomboid};
use crate::diagram::{Diagram, DiagramError};
use crate::graph::{EdgeId, GraphError, OrientedGraph};
use crate::monoid::{IntMatrix, MonoidKind, MonoidValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdversarialError {
    #[error("graph is not {0}")]
    Precondition(&'static str),
    #[error("the two edges must differ")]
    SameEdge,
    #[error("edges {a}, {b}, {c}, {d} do not form a rhomboid")]
    NotARhomboid { a: EdgeId, b: EdgeId, c: EdgeId, d: EdgeId },
    #[error("graph has no loops")]
    NoLoops,
    #[error("{loops} loops but {given} kernel entries")]
    LengthMismatch { loops: usize, given: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Checks the graph class both nilpotent labelings need and names the first
/// predicate that fails.
pub fn check_nilpotent_class(g: &OrientedGraph) -> Result<(), AdversarialError> {
    let checks: [(&'static str, bool); 5] = [
        ("loop-free", g.loop_count() == 0),
        ("multi-edge-free", !g.has_multiple_edges()),
        ("quasi-acyclic", g.is_quasi_acyclic()),
        ("2-path-bounded", g.is_two_path_bounded()),
        ("triangle-free", !g.has_triangle()),
    ];
    match checks.iter().find(|(_, ok)| !ok) {
        Some((name, _)) => Err(AdversarialError::Precondition(name)),
        None => Ok(()),
    }
}

fn matrix_diagram(g: &OrientedGraph, k: usize, labels: Vec<IntMatrix>) -> Result<Diagram, AdversarialError> {
    let labels = labels.into_iter().map(MonoidValue::Matrix).collect();
    Ok(Diagram::new(g.clone(), MonoidKind::Matrix { k }, labels)?)
}

/// `Mat_2` labeling with `E_{1,2}` on `e` and `0` elsewhere. Commutative on
/// the nilpotent graph class.
pub fn nz_edge_labeling(g: &OrientedGraph, e: EdgeId) -> Result<Diagram, AdversarialError> {
    g.try_edge(e)?;
    check_nilpotent_class(g)?;
    let labels = (0..g.edge_count())
        .map(|x| if x == e { IntMatrix::unit(2, 1, 2) } else { IntMatrix::zero(2) })
        .collect();
    matrix_diagram(g, 2, labels)
}

/// `Mat_3` labeling with `l(e)·l(e') = E_{1,3}`, commutative on the nilpotent
/// graph class.
///
/// When `e'` continues `e`, every edge leaving `o(e)` gets `E_{1,2}` and every
/// edge entering `t(e')` gets `E_{2,3}`, so all paths `o(e) → t(e')` agree.
/// Otherwise only `e` and `e'` are labeled.
pub fn nz_pair_labeling(g: &OrientedGraph, e: EdgeId, e2: EdgeId) -> Result<Diagram, AdversarialError> {
    let first = g.try_edge(e)?;
    let second = g.try_edge(e2)?;
    if e == e2 {
        return Err(AdversarialError::SameEdge);
    }
    check_nilpotent_class(g)?;
    let consecutive = first.tail == second.origin;
    let labels = g
        .edges()
        .iter()
        .enumerate()
        .map(|(x, edge)| {
            let (left, right) = if consecutive {
                (edge.origin == first.origin, edge.tail == second.tail)
            } else {
                (x == e, x == e2)
            };
            match (left, right) {
                (true, _) => IntMatrix::unit(3, 1, 2),
                (false, true) => IntMatrix::unit(3, 2, 3),
                _ => IntMatrix::zero(3),
            }
        })
        .collect();
    matrix_diagram(g, 3, labels)
}

/// `Mat_3` labeling with `l(a) = E_{1,2}`, `l(b) = E_{2,3}`, the identity on
/// loops and `0` elsewhere: `l(a)l(b) = E_{1,3}` while `l(c)l(d) = 0`.
///
/// Loops get the identity so that on graphs with loops the square is still
/// the only broken relation.
pub fn rhomboid_gap_labeling(g: &OrientedGraph, r: &Rhomboid) -> Result<Diagram, AdversarialError> {
    if !is_rhomboid(g, r.a, r.b, r.c, r.d)? {
        return Err(AdversarialError::NotARhomboid { a: r.a, b: r.b, c: r.c, d: r.d });
    }
    let labels = (0..g.edge_count())
        .map(|x| {
            if x == r.a {
                IntMatrix::unit(3, 1, 2)
            } else if x == r.b {
                IntMatrix::unit(3, 2, 3)
            } else if g.is_loop(x) {
                IntMatrix::identity(3)
            } else {
                IntMatrix::zero(3)
            }
        })
        .collect();
    matrix_diagram(g, 3, labels)
}

/// `1×1` matrices: `[1]` on loops, `[0]` on every other edge. Commutative on
/// quasi-acyclic graphs.
pub fn loop_indicator_labeling(g: &OrientedGraph) -> Result<Diagram, AdversarialError> {
    if !g.is_quasi_acyclic() {
        return Err(AdversarialError::Precondition("quasi-acyclic"));
    }
    let labels = g
        .edges()
        .iter()
        .map(|e| if e.is_loop() { IntMatrix::identity(1) } else { IntMatrix::zero(1) })
        .collect();
    matrix_diagram(g, 1, labels)
}

/// `Mat_2` labeling sending the `j`-th loop (ascending edge id) to
/// `[[1, v_j], [0, 1]]` and every other edge to `0`.
pub fn loop_kernel_labeling(g: &OrientedGraph, v: &[BigInt]) -> Result<Diagram, AdversarialError> {
    let loops = g.loops();
    if loops.is_empty() {
        return Err(AdversarialError::NoLoops);
    }
    if loops.len() != v.len() {
        return Err(AdversarialError::LengthMismatch { loops: loops.len(), given: v.len() });
    }
    let mut labels = vec![IntMatrix::zero(2); g.edge_count()];
    for (&e, x) in loops.iter().zip(v) {
        labels[e] = IntMatrix::upper_unitriangular(x.clone());
    }
    matrix_diagram(g, 2, labels)
}
