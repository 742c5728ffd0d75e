//! Brute-force ground truth: enumerate every walk up to a length bound and
//! compare labels within each endpoint pair.
//!
//! With the bound set to `|V|` the verdict is exact. If all walks of length
//! at most `|V|` agree, every simple cycle (length ≤ `|V|`) labels to the
//! identity, so any walk can be shortened to a simple path (length ≤ `|V|-1`)
//! without changing its label, and simple paths with equal endpoints agree.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diagram::Diagram;
use crate::graph::{EdgeId, OrientedGraph, Path, VertexId};
use crate::monoid::Monoid;
use crate::verifier::Witness;

pub const DEFAULT_WALK_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("walk enumeration exceeded the budget of {0} walks")]
    BudgetExceeded(usize),
}

/// All walks of length at most `max_len`, grouped by `(origin, tail)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WalkEnumeration {
    pub max_len: usize,
    pub groups: BTreeMap<(VertexId, VertexId), Vec<Path>>,
}

impl WalkEnumeration {
    pub fn total(&self) -> usize {
        self.groups.values().map(Vec::len).sum()
    }

    pub fn non_empty(&self) -> usize {
        self.groups.values().flatten().filter(|p| !p.is_empty()).count()
    }

    pub fn walks(&self) -> impl Iterator<Item = &Path> {
        self.groups.values().flatten()
    }
}

/// Lists every walk of length `0..=max_len`, including the empty walk at each
/// vertex. Fails rather than truncating when more than `budget` walks exist.
pub fn enumerate_walks(g: &OrientedGraph, max_len: usize, budget: usize) -> Result<WalkEnumeration, OracleError> {
    let mut groups: BTreeMap<(VertexId, VertexId), Vec<Path>> = BTreeMap::new();
    let mut count = 0usize;
    // frontier holds the walks of the current length
    let mut frontier: Vec<Path> = (0..g.vertex_count()).map(Path::empty).collect();
    for len in 0..=max_len {
        count += frontier.len();
        if count > budget {
            return Err(OracleError::BudgetExceeded(budget));
        }
        let mut next = Vec::new();
        for walk in &frontier {
            if len < max_len {
                for &e in g.out_edges(walk.tail) {
                    let mut edges = walk.edges.clone();
                    edges.push(e);
                    next.push(Path {
                        origin: walk.origin,
                        tail: g.tail(e),
                        edges,
                    });
                }
            }
        }
        for walk in frontier {
            groups.entry((walk.origin, walk.tail)).or_default().push(walk);
        }
        frontier = next;
    }
    Ok(WalkEnumeration { max_len, groups })
}

struct Search<'a, M: Monoid> {
    diagram: &'a Diagram<M>,
    max_len: usize,
    budget: usize,
    seen: usize,
    // first walk found per (origin, tail), with its label
    reference: BTreeMap<(VertexId, VertexId), (Vec<EdgeId>, M::Element)>,
}

impl<M: Monoid> Search<'_, M> {
    fn visit(
        &mut self,
        origin: VertexId,
        tail: VertexId,
        edges: &mut Vec<EdgeId>,
        label: &M::Element,
    ) -> Result<Option<Witness>, OracleError> {
        self.seen += 1;
        if self.seen > self.budget {
            return Err(OracleError::BudgetExceeded(self.budget));
        }
        let monoid = self.diagram.monoid();
        match self.reference.get(&(origin, tail)) {
            Some((ref_edges, ref_label)) => {
                if !monoid.equals(ref_label, label) {
                    return Ok(Some(Witness::PathMismatch {
                        first: Path {
                            origin,
                            tail,
                            edges: ref_edges.clone(),
                        },
                        second: Path {
                            origin,
                            tail,
                            edges: edges.clone(),
                        },
                    }));
                }
            }
            None => {
                self.reference.insert((origin, tail), (edges.clone(), label.clone()));
            }
        }
        if edges.len() == self.max_len {
            return Ok(None);
        }
        let g = self.diagram.graph();
        for &e in g.out_edges(tail) {
            let extended = monoid.op(label, self.diagram.label(e));
            edges.push(e);
            let found = self.visit(origin, g.tail(e), edges, &extended)?;
            edges.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// Searches for two walks of length at most `max_len` with equal endpoints
/// and different labels.
pub fn oracle_check<M: Monoid>(
    d: &Diagram<M>,
    max_len: usize,
    budget: usize,
) -> Result<Option<Witness>, OracleError> {
    let mut search = Search {
        diagram: d,
        max_len,
        budget,
        seen: 0,
        reference: BTreeMap::new(),
    };
    let identity = d.monoid().identity();
    for v in 0..d.graph().vertex_count() {
        if let Some(w) = search.visit(v, v, &mut Vec::new(), &identity)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// True iff all walks of length at most `max_len` with equal endpoints have
/// equal labels. Uses [`DEFAULT_WALK_BUDGET`].
pub fn oracle_verify<M: Monoid>(d: &Diagram<M>, max_len: usize) -> Result<bool, OracleError> {
    oracle_check(d, max_len, DEFAULT_WALK_BUDGET).map(|w| w.is_none())
}

/// Exact verdict: walks up to length `|V|`.
pub fn oracle_verify_exact<M: Monoid>(d: &Diagram<M>) -> Result<bool, OracleError> {
    oracle_verify(d, d.graph().vertex_count())
}

/// Re-evaluates a witness against the diagram: `true` iff it is well formed
/// and really demonstrates non-commutativity.
pub fn validate_witness<M: Monoid>(d: &Diagram<M>, w: &Witness) -> bool {
    let g = d.graph();
    let monoid = d.monoid();
    match w {
        Witness::NonIdentityLoop { edge } => match g.try_edge(*edge) {
            Ok(e) => e.is_loop() && !monoid.equals(d.label(*edge), &monoid.identity()),
            Err(_) => false,
        },
        Witness::MultiEdgeMismatch { kept, duplicate } => match (g.try_edge(*kept), g.try_edge(*duplicate)) {
            (Ok(a), Ok(b)) => {
                kept != duplicate
                    && !a.is_loop()
                    && a == b
                    && !monoid.equals(d.label(*kept), d.label(*duplicate))
            }
            _ => false,
        },
        Witness::PathMismatch { first, second } => {
            if !first.is_valid_in(g) || !second.is_valid_in(g) {
                return false;
            }
            if first.origin != second.origin || first.tail != second.tail {
                return false;
            }
            match (d.label_of_path(first), d.label_of_path(second)) {
                (Ok(a), Ok(b)) => !monoid.equals(&a, &b),
                _ => false,
            }
        }
    }
}
