//! Commutativity verification for monoid-labeled oriented multigraphs.
//!
//! A diagram is an oriented graph (loops and parallel edges allowed) whose
//! edges carry elements of a monoid. It is commutative when any two paths with
//! the same endpoints have equal label products, empty paths labeling to the
//! identity. [`verify`] decides this with at most
//! `min(|V|², |E|)·min(|V|, |E|+1) + |E|` equality checks and
//! `min(|V|², |E|)·min(|V|, |E|+1)` multiplications, and reports the exact
//! counts.
//!
//! Besides the verifier the crate carries a brute-force [`oracle`], the
//! triploid worst-case families in [`constructions`], and labelings that are
//! hard to tell apart from commutative ones in [`adversarial`].

pub mod adversarial;
pub mod bench;
pub mod constructions;
pub mod diagram;
pub mod graph;
pub mod monoid;
pub mod oracle;
pub mod random;
pub mod verifier;

pub use diagram::{parse_diagram, parse_graph, serialize_diagram, serialize_graph, Diagram, DiagramError, ParseError};
pub use graph::{Edge, EdgeId, GraphError, OrientedGraph, Path, VertexId};
pub use monoid::{
    AdditiveMonoid, AdditiveNumber, CountingMonoid, FreeMonoid, FreeWord, IntMatrix, MatrixMonoid, Monoid,
    MonoidError, MonoidKind, MonoidValue,
};
pub use verifier::{verify, Counters, RelationTrace, VerificationReport, VerifyOptions, Witness};
