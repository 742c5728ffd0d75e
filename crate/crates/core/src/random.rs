//! Seeded generators for small random diagrams and larger benchmark graphs.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::diagram::Diagram;
use crate::graph::{Edge, OrientedGraph};
use crate::monoid::{AdditiveNumber, FreeWord, IntMatrix, MonoidKind, MonoidValue};

/// Shape limits for the small-instance suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmallConfig {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for SmallConfig {
    fn default() -> Self {
        SmallConfig { max_vertices: 5, max_edges: 6 }
    }
}

/// How labels are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelMode {
    /// Uniform from the family's small value set.
    Uniform,
    /// Half of the labels are the identity.
    IdentityBiased,
    /// Additive only: `l(e) = p(t(e)) - p(o(e))` for a potential `p` in
    /// `{-1, 0, 1}`, hence commutative.
    Potential,
}

/// Multigraph on `1..=max_vertices` vertices with `0..=max_edges` edges,
/// where each edge is a loop, a copy of an earlier edge, or uniform.
pub fn random_small_graph(rng: &mut ChaCha8Rng, cfg: SmallConfig) -> OrientedGraph {
    let n = rng.gen_range(1..=cfg.max_vertices);
    let m = rng.gen_range(0..=cfg.max_edges);
    let mut edges: Vec<Edge> = Vec::with_capacity(m);
    for _ in 0..m {
        let roll = rng.gen_range(0..6);
        let e = if roll == 0 {
            let v = rng.gen_range(0..n);
            Edge::new(v, v)
        } else if roll == 1 && !edges.is_empty() {
            *edges.choose(rng).unwrap()
        } else {
            Edge::new(rng.gen_range(0..n), rng.gen_range(0..n))
        };
        edges.push(e);
    }
    OrientedGraph::new(n, edges).expect("endpoints in range")
}

/// Matrices used for random `Mat_2` labels: `0, I, E_{1,2}, E_{2,1}` and
/// `[[1,1],[0,1]]`.
pub fn small_matrices() -> Vec<IntMatrix> {
    vec![
        IntMatrix::zero(2),
        IntMatrix::identity(2),
        IntMatrix::unit(2, 1, 2),
        IntMatrix::unit(2, 2, 1),
        IntMatrix::upper_unitriangular(1),
    ]
}

fn uniform_value(rng: &mut ChaCha8Rng, kind: MonoidKind) -> MonoidValue {
    match kind {
        MonoidKind::Free => {
            let len = rng.gen_range(0..=2);
            MonoidValue::Word(FreeWord((0..len).map(|_| rng.gen_range(0..3)).collect()))
        }
        MonoidKind::Additive => MonoidValue::Number(AdditiveNumber::integer(rng.gen_range(-2..=2))),
        MonoidKind::Matrix { .. } => MonoidValue::Matrix(small_matrices().swap_remove(rng.gen_range(0..5))),
    }
}

fn identity_value(kind: MonoidKind) -> MonoidValue {
    match kind {
        MonoidKind::Free => MonoidValue::Word(FreeWord::empty()),
        MonoidKind::Additive => MonoidValue::Number(AdditiveNumber::zero()),
        MonoidKind::Matrix { k } => MonoidValue::Matrix(IntMatrix::identity(k)),
    }
}

/// Labels `g` over `kind` (`Potential` falls back to `Uniform` for non-additive
/// families).
pub fn random_labels(rng: &mut ChaCha8Rng, g: &OrientedGraph, kind: MonoidKind, mode: LabelMode) -> Diagram {
    let labels = match (mode, kind) {
        (LabelMode::Potential, MonoidKind::Additive) => {
            let p: Vec<i64> = (0..g.vertex_count()).map(|_| rng.gen_range(-1..=1)).collect();
            g.edges()
                .iter()
                .map(|e| MonoidValue::Number(AdditiveNumber::integer(p[e.tail] - p[e.origin])))
                .collect()
        }
        (LabelMode::IdentityBiased, _) => (0..g.edge_count())
            .map(|_| {
                if rng.gen_bool(0.5) {
                    identity_value(kind)
                } else {
                    uniform_value(rng, kind)
                }
            })
            .collect(),
        _ => (0..g.edge_count()).map(|_| uniform_value(rng, kind)).collect(),
    };
    Diagram::new(g.clone(), kind, labels).expect("labels match the family")
}

/// One diagram of the small suite: random shape, family and label mode.
pub fn random_small_diagram(rng: &mut ChaCha8Rng, cfg: SmallConfig) -> Diagram {
    let g = random_small_graph(rng, cfg);
    let kind = [MonoidKind::Free, MonoidKind::Additive, MonoidKind::Matrix { k: 2 }][rng.gen_range(0..3)];
    let mode = match rng.gen_range(0..3) {
        0 => LabelMode::Uniform,
        1 => LabelMode::IdentityBiased,
        _ => LabelMode::Potential,
    };
    random_labels(rng, &g, kind, mode)
}

/// `count` small diagrams from one seed.
pub fn small_suite(seed: u64, count: usize, cfg: SmallConfig) -> Vec<Diagram> {
    let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    (0..count).map(|_| random_small_diagram(&mut rng, cfg)).collect()
}

/// Uniform multigraph with `n` vertices and `m` edges; loops and parallel
/// edges occur naturally.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, m: usize) -> OrientedGraph {
    let edges = (0..m)
        .map(|_| Edge::new(rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    OrientedGraph::new(n, edges).expect("endpoints in range")
}

/// Commutative additive labeling from a random integer potential.
pub fn potential_labeling(rng: &mut ChaCha8Rng, g: &OrientedGraph) -> Diagram {
    let p: Vec<BigInt> = (0..g.vertex_count()).map(|_| BigInt::from(rng.gen_range(-1000i64..=1000))).collect();
    let labels = g
        .edges()
        .iter()
        .map(|e| MonoidValue::Number(AdditiveNumber((&p[e.tail] - &p[e.origin]).into())))
        .collect();
    Diagram::new(g.clone(), MonoidKind::Additive, labels).expect("additive labels")
}
