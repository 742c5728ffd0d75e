//! Rhomboids, triploid graphs, parameter selection for a given vertex and edge
//! count, and the closed-form rank bounds.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{Edge, EdgeId, GraphError, OrientedGraph};

/// Denominator of the constant in the lower bounds.
pub const LOWER_BOUND_DENOMINATOR: u128 = 1 << 14;

pub const DEFAULT_RHOMBOID_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid triploid parameters {params}: {reason}")]
    InvalidParams { params: TriploidParams, reason: &'static str },
    #[error("need n >= 4 and m >= 4, got n={n}, m={m}")]
    TooSmall { n: u64, m: u64 },
    #[error("more than {0} rhomboids")]
    BudgetExceeded(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Four edges `a, b, c, d` forming a square: `(a, b)` and `(c, d)` are two
/// paths with the same endpoints through distinct middle vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rhomboid {
    pub a: EdgeId,
    pub b: EdgeId,
    pub c: EdgeId,
    pub d: EdgeId,
}

impl Rhomboid {
    pub fn new(a: EdgeId, b: EdgeId, c: EdgeId, d: EdgeId) -> Self {
        Rhomboid { a, b, c, d }
    }

    pub fn edges(&self) -> [EdgeId; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// The two consecutive pairs `(a, b)` and `(c, d)`.
    pub fn sides(&self) -> [(EdgeId, EdgeId); 2] {
        [(self.a, self.b), (self.c, self.d)]
    }
}

pub fn is_rhomboid(g: &OrientedGraph, a: EdgeId, b: EdgeId, c: EdgeId, d: EdgeId) -> Result<bool, GraphError> {
    let [ea, eb, ec, ed] = [g.try_edge(a)?, g.try_edge(b)?, g.try_edge(c)?, g.try_edge(d)?];
    if ea.origin != ec.origin || eb.tail != ed.tail || ea.tail != eb.origin || ec.tail != ed.origin {
        return Ok(false);
    }
    let vs = [ea.origin, ea.tail, ed.origin, ed.tail];
    let distinct = (0..4).all(|i| (i + 1..4).all(|j| vs[i] != vs[j]));
    Ok(distinct)
}

pub fn are_disjoint(r1: &Rhomboid, r2: &Rhomboid) -> bool {
    (r1.a != r2.a || r1.b != r2.b)
        && (r1.a != r2.c || r1.b != r2.d)
        && (r1.c != r2.c || r1.d != r2.d)
        && (r1.c != r2.a || r1.d != r2.b)
}

/// Parameters of the triploid `T(n1, n2, n3, n0, e)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriploidParams {
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
    pub n0: u64,
    pub e: u64,
}

impl fmt::Display for TriploidParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{},{},{},{})", self.n1, self.n2, self.n3, self.n0, self.e)
    }
}

impl TriploidParams {
    pub fn new(n1: u64, n2: u64, n3: u64, n0: u64, e: u64) -> Result<Self, ConstructionError> {
        let p = TriploidParams { n1, n2, n3, n0, e };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        let invalid = |reason| ConstructionError::InvalidParams { params: *self, reason };
        if self.n1 == 0 {
            return Err(invalid("n1 must be positive"));
        }
        let bipartite = self
            .n2
            .checked_mul(self.n1 + self.n3)
            .ok_or_else(|| invalid("edge count overflows"))?;
        if self.e < bipartite {
            return Err(invalid("e is smaller than n2*(n1+n3)"));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> u64 {
        self.n0 + self.n1 + self.n2 + self.n3
    }

    pub fn edge_count(&self) -> u64 {
        self.e
    }

    pub fn bipartite_edge_count(&self) -> u64 {
        self.n2 * (self.n1 + self.n3)
    }

    pub fn loop_count(&self) -> u64 {
        self.e - self.bipartite_edge_count()
    }

    pub fn family_size(&self) -> u64 {
        self.n1 * self.n3 * (self.n2 / 2)
    }

    /// Id of the edge from the `k`-th vertex of the first row to the `l`-th
    /// vertex of the second row (0-based).
    pub fn edge_12(&self, k: u64, l: u64) -> EdgeId {
        (k * self.n2 + l) as EdgeId
    }

    /// Id of the edge from the `k`-th vertex of the second row to the `l`-th
    /// vertex of the third row (0-based).
    pub fn edge_23(&self, k: u64, l: u64) -> EdgeId {
        (self.n1 * self.n2 + k * self.n3 + l) as EdgeId
    }

    pub fn to_json(&self) -> Value {
        json!({ "n1": self.n1, "n2": self.n2, "n3": self.n3, "n0": self.n0, "e": self.e })
    }
}

/// Builds `T(n1, n2, n3, n0, e)`.
///
/// Vertices are numbered row by row: `V¹, V², V³`, then the `n0` isolated
/// ones. Edges `V¹→V²` come first in lexicographic order, then `V²→V³`, then
/// the loops at vertex 0.
pub fn triploid(p: &TriploidParams) -> Result<OrientedGraph, ConstructionError> {
    p.validate()?;
    let n1 = p.n1 as usize;
    let n2 = p.n2 as usize;
    let n3 = p.n3 as usize;
    let mut edges = Vec::with_capacity(p.e as usize);
    for k in 0..n1 {
        for l in 0..n2 {
            edges.push(Edge::new(k, n1 + l));
        }
    }
    for k in 0..n2 {
        for l in 0..n3 {
            edges.push(Edge::new(n1 + k, n1 + n2 + l));
        }
    }
    edges.extend((0..p.loop_count()).map(|_| Edge::new(0, 0)));
    Ok(OrientedGraph::new(p.vertex_count() as usize, edges)?)
}

/// The family pairing second-row vertices `2j, 2j+1` for every first-row
/// vertex `i` and third-row vertex `k`. Ordered by `(i, j, k)`.
pub fn explicit_rhomboid_family(p: &TriploidParams) -> Result<Vec<Rhomboid>, ConstructionError> {
    p.validate()?;
    let mut family = Vec::with_capacity(p.family_size() as usize);
    for i in 0..p.n1 {
        for j in 0..p.n2 / 2 {
            for k in 0..p.n3 {
                family.push(Rhomboid {
                    a: p.edge_12(i, 2 * j),
                    b: p.edge_23(2 * j, k),
                    c: p.edge_12(i, 2 * j + 1),
                    d: p.edge_23(2 * j + 1, k),
                });
            }
        }
    }
    Ok(family)
}

/// Which branch of [`choose_triploid`] applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionCase {
    /// `m <= 16`, or `n <= 16` and `m <= n²`.
    Small,
    /// `16 < m <= 2n - 4`.
    Sparse,
    /// `n, m > 16` and `2n - 4 < m <= n²`.
    Medium,
    /// `n² < m`.
    Dense,
}

pub fn selection_case(n: u64, m: u64) -> Result<SelectionCase, ConstructionError> {
    if n < 4 || m < 4 {
        return Err(ConstructionError::TooSmall { n, m });
    }
    let n = n as u128;
    let m = m as u128;
    let sq = n * n;
    Ok(if m <= 16 || (n <= 16 && m <= sq) {
        SelectionCase::Small
    } else if m <= 2 * n - 4 {
        SelectionCase::Sparse
    } else if n > 16 && m <= sq {
        SelectionCase::Medium
    } else {
        SelectionCase::Dense
    })
}

/// Least `t >= 0` with `n - 2t <= 0` or `(n - 2t)² <= n² - 4m`, which is
/// `⌈(n - √max(0, n² - 4m)) / 2⌉` computed without floating point.
pub fn middle_row_size(n: u64, m: u64) -> u64 {
    let n = n as i128;
    let disc = n * n - 4 * m as i128;
    let ok = |t: i128| {
        let r = n - 2 * t;
        r <= 0 || (disc >= 0 && r * r <= disc)
    };
    let (mut lo, mut hi) = (0i128, (n + 1) / 2);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo as u64
}

/// Triploid parameters with exactly `n` vertices and `m` edges.
pub fn choose_triploid(n: u64, m: u64) -> Result<TriploidParams, ConstructionError> {
    let p = match selection_case(n, m)? {
        SelectionCase::Small => TriploidParams { n1: 1, n2: 2, n3: 1, n0: n - 4, e: m },
        SelectionCase::Sparse => {
            let q = m / 4;
            TriploidParams { n1: q, n2: 2, n3: q, n0: n - 2 * q - 2, e: m }
        }
        SelectionCase::Medium => {
            let t = middle_row_size(n, m);
            let q = (n - t) / 4;
            TriploidParams { n1: q, n2: t, n3: q, n0: n - 2 * q - t, e: m }
        }
        SelectionCase::Dense => {
            let q = n / 4;
            let h = n / 2;
            TriploidParams { n1: q, n2: h, n3: q, n0: n - 2 * q - h, e: m }
        }
    };
    p.validate()?;
    Ok(p)
}

fn enumerate_rhomboids(g: &OrientedGraph, budget: usize, mut visit: impl FnMut(Rhomboid)) -> Result<(), ConstructionError> {
    let mut count = 0usize;
    for (a, ea) in g.edges().iter().enumerate() {
        if ea.is_loop() {
            continue;
        }
        for &b in g.out_edges(ea.tail) {
            let tb = g.tail(b);
            if tb == ea.origin || tb == ea.tail {
                continue;
            }
            for &c in g.out_edges(ea.origin) {
                let tc = g.tail(c);
                if tc == ea.origin || tc == ea.tail || tc == tb {
                    continue;
                }
                for &d in g.out_edges(tc) {
                    if g.tail(d) != tb {
                        continue;
                    }
                    count += 1;
                    if count > budget {
                        return Err(ConstructionError::BudgetExceeded(budget));
                    }
                    visit(Rhomboid { a, b, c, d });
                }
            }
        }
    }
    Ok(())
}

/// Every rhomboid of `g`, in ascending `(a, b, c, d)` order.
pub fn all_rhomboids(g: &OrientedGraph, budget: usize) -> Result<Vec<Rhomboid>, ConstructionError> {
    let mut out = Vec::new();
    enumerate_rhomboids(g, budget, |r| out.push(r))?;
    out.sort_unstable();
    Ok(out)
}

/// A pairwise disjoint family found by scanning rhomboids in ascending edge-id
/// order and keeping each one compatible with those kept so far.
pub fn greedy_disjoint_rhomboids(g: &OrientedGraph, budget: usize) -> Result<Vec<Rhomboid>, ConstructionError> {
    greedy_disjoint_rhomboids_from(g, &[], budget)
}

/// Like [`greedy_disjoint_rhomboids`], but starts from `seed`, which must
/// itself be a disjoint family of rhomboids of `g`.
pub fn greedy_disjoint_rhomboids_from(
    g: &OrientedGraph,
    seed: &[Rhomboid],
    budget: usize,
) -> Result<Vec<Rhomboid>, ConstructionError> {
    // two rhomboids conflict exactly when they share a consecutive side pair
    let mut used: HashSet<(EdgeId, EdgeId)> = HashSet::new();
    let mut family = Vec::new();
    for r in seed {
        for s in r.sides() {
            used.insert(s);
        }
        family.push(*r);
    }
    for r in all_rhomboids(g, budget)? {
        let [s1, s2] = r.sides();
        if !used.contains(&s1) && !used.contains(&s2) {
            used.insert(s1);
            used.insert(s2);
            family.push(r);
        }
    }
    Ok(family)
}

/// Closed-form bounds on the commutativity rank `η` and multiplication rank
/// `ν` of graphs with `n` vertices and `m` edges. The lower bounds are
/// `numerator / 16384`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankBounds {
    pub n: u64,
    pub m: u64,
    pub eta_upper: u128,
    pub nu_upper: u128,
    pub eta_lower_numerator: u128,
    pub nu_lower_numerator: u128,
}

fn ratio(numer: u128, denom: u128) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

fn number(v: u128) -> Value {
    match u64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

impl RankBounds {
    pub fn eta_lower(&self) -> BigRational {
        ratio(self.eta_lower_numerator, LOWER_BOUND_DENOMINATOR)
    }

    pub fn nu_lower(&self) -> BigRational {
        ratio(self.nu_lower_numerator, LOWER_BOUND_DENOMINATOR)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "m": self.m,
            "eta_upper": number(self.eta_upper),
            "nu_upper": number(self.nu_upper),
            "eta_lower": format!("{}/{}", self.eta_lower_numerator, LOWER_BOUND_DENOMINATOR),
            "nu_lower": format!("{}/{}", self.nu_lower_numerator, LOWER_BOUND_DENOMINATOR),
        })
    }
}

pub fn rank_bounds(n: u64, m: u64) -> RankBounds {
    let (n128, m128) = (n as u128, m as u128);
    let base = (n128 * n128).min(m128);
    let nu_upper = base * n128.min(m128 + 1);
    let nu_lower = base * n128.min(m128);
    RankBounds {
        n,
        m,
        eta_upper: nu_upper + m128,
        nu_upper,
        eta_lower_numerator: nu_lower + m128,
        nu_lower_numerator: nu_lower,
    }
}

/// The chosen triploid for `(n, m)` and whether its certificates reach the
/// lower bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuGeReport {
    pub n: u64,
    pub m: u64,
    pub params: TriploidParams,
    pub case: SelectionCase,
    pub rh_family_size: u64,
    pub loops: u64,
    /// `rh + loops >= (min(m, n²)·min(m, n) + m) / 16384`
    pub inequality_1_holds: bool,
    /// `rh >= min(m, n²)·min(m, n) / 16384`
    pub inequality_2_holds: bool,
}

impl NuGeReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "m": self.m,
            "params": self.params.to_json(),
            "case": self.case,
            "rh_family_size": self.rh_family_size,
            "loops": self.loops,
            "inequality_1_holds": self.inequality_1_holds,
            "inequality_2_holds": self.inequality_2_holds,
        })
    }
}

pub fn verify_nu_ge(n: u64, m: u64) -> Result<NuGeReport, ConstructionError> {
    let case = selection_case(n, m)?;
    let params = choose_triploid(n, m)?;
    let g = triploid(&params)?;
    let rh = explicit_rhomboid_family(&params)?.len() as u64;
    let loops = g.loop_count() as u64;
    let bounds = rank_bounds(n, m);
    let scaled = |x: u64| BigRational::from_integer(BigInt::from(x));
    Ok(NuGeReport {
        n,
        m,
        params,
        case,
        rh_family_size: rh,
        loops,
        inequality_1_holds: scaled(rh + loops) >= bounds.eta_lower(),
        inequality_2_holds: scaled(rh) >= bounds.nu_lower(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n1: u64, n2: u64, n3: u64, n0: u64, e: u64) -> TriploidParams {
        TriploidParams::new(n1, n2, n3, n0, e).unwrap()
    }

    #[test]
    fn fig4_triploid() {
        let p = params(3, 2, 4, 2, 16);
        let g = triploid(&p).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.loop_count()), (11, 16, 2));
        let fam = explicit_rhomboid_family(&p).unwrap();
        assert_eq!(fam.len(), 12);
        let mut pairs = 0;
        for (i, r) in fam.iter().enumerate() {
            assert!(is_rhomboid(&g, r.a, r.b, r.c, r.d).unwrap());
            for s in &fam[i + 1..] {
                assert!(are_disjoint(r, s));
                pairs += 1;
            }
        }
        assert_eq!(pairs, 66);
    }

    #[test]
    fn small_triploids() {
        let g = triploid(&params(1, 2, 1, 0, 4)).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.loop_count()), (4, 4, 0));
        assert_eq!(explicit_rhomboid_family(&params(1, 2, 1, 0, 4)).unwrap(), vec![Rhomboid::new(0, 2, 1, 3)]);
        let g = triploid(&params(1, 2, 1, 6, 12)).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.loop_count()), (10, 12, 8));
        assert!(explicit_rhomboid_family(&params(2, 1, 2, 0, 4)).unwrap().is_empty());
    }

    #[test]
    fn invalid_params() {
        assert!(TriploidParams::new(0, 2, 1, 0, 4).is_err());
        assert!(TriploidParams::new(1, 2, 1, 0, 3).is_err());
        let bad = TriploidParams { n1: 1, n2: 2, n3: 1, n0: 0, e: 3 };
        assert!(triploid(&bad).is_err());
        assert!(explicit_rhomboid_family(&bad).is_err());
    }

    #[test]
    fn rhomboid_predicate() {
        // a: 0->1, b: 1->3, c: 0->2, d: 2->3
        let g = OrientedGraph::from_pairs(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap();
        assert!(is_rhomboid(&g, 0, 1, 2, 3).unwrap());
        assert!(!is_rhomboid(&g, 0, 1, 0, 1).unwrap());
        assert!(!is_rhomboid(&g, 0, 3, 2, 1).unwrap());
        assert!(is_rhomboid(&g, 0, 1, 2, 9).is_err());
        // t(a) = t(d) on three vertices
        let tri = OrientedGraph::from_pairs(3, &[(0, 1), (1, 2), (0, 1), (1, 2)]).unwrap();
        assert!(!is_rhomboid(&tri, 0, 1, 2, 3).unwrap());
    }

    // TL=0 TR=1 ML=2 MC=3 MR=4 B=5
    fn fig2a() -> OrientedGraph {
        OrientedGraph::from_pairs(6, &[(0, 2), (0, 3), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5)]).unwrap()
    }

    // T=0 ML=1 MC=2 MR=3 B=4
    fn fig2c() -> OrientedGraph {
        OrientedGraph::from_pairs(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn disjointness_examples() {
        let g = fig2a();
        let red = Rhomboid::new(0, 4, 1, 5);
        let blue = Rhomboid::new(2, 5, 3, 6);
        assert!(is_rhomboid(&g, red.a, red.b, red.c, red.d).unwrap());
        assert!(is_rhomboid(&g, blue.a, blue.b, blue.c, blue.d).unwrap());
        assert!(are_disjoint(&red, &blue));
        assert!(!are_disjoint(&red, &red));

        let g = fig2c();
        let r1 = Rhomboid::new(0, 3, 1, 4);
        let r2 = Rhomboid::new(1, 4, 2, 5);
        assert!(is_rhomboid(&g, r1.a, r1.b, r1.c, r1.d).unwrap());
        assert!(is_rhomboid(&g, r2.a, r2.b, r2.c, r2.d).unwrap());
        assert!(!are_disjoint(&r1, &r2));
        assert!(!are_disjoint(&r1, &Rhomboid::new(r1.c, r1.d, r1.a, r1.b)));
    }

    #[test]
    fn greedy_examples() {
        let fam = greedy_disjoint_rhomboids(&fig2c(), DEFAULT_RHOMBOID_BUDGET).unwrap();
        assert_eq!(fam.len(), 1);
        let fam = greedy_disjoint_rhomboids(&fig2a(), DEFAULT_RHOMBOID_BUDGET).unwrap();
        assert_eq!(fam.len(), 2);
        let path = OrientedGraph::from_pairs(3, &[(0, 1), (1, 2), (2, 2)]).unwrap();
        assert!(greedy_disjoint_rhomboids(&path, DEFAULT_RHOMBOID_BUDGET).unwrap().is_empty());

        let p = params(3, 2, 4, 2, 16);
        let g = triploid(&p).unwrap();
        let greedy = greedy_disjoint_rhomboids(&g, DEFAULT_RHOMBOID_BUDGET).unwrap();
        assert!(greedy.len() >= 12);
        let seeded =
            greedy_disjoint_rhomboids_from(&g, &explicit_rhomboid_family(&p).unwrap(), DEFAULT_RHOMBOID_BUDGET).unwrap();
        assert!(seeded.len() >= 12);
        for fam in [&greedy, &seeded] {
            for (i, r) in fam.iter().enumerate() {
                assert!(fam[i + 1..].iter().all(|s| are_disjoint(r, s)));
            }
        }
        assert_eq!(greedy_disjoint_rhomboids(&g, 3), Err(ConstructionError::BudgetExceeded(3)));
    }

    #[test]
    fn enumerated_rhomboids_are_rhomboids() {
        let g = triploid(&params(2, 3, 2, 0, 12)).unwrap();
        let all = all_rhomboids(&g, DEFAULT_RHOMBOID_BUDGET).unwrap();
        // ordered pairs of distinct middle vertices, for each (i, k)
        assert_eq!(all.len(), 2 * 2 * 3 * 2);
        for r in &all {
            assert!(is_rhomboid(&g, r.a, r.b, r.c, r.d).unwrap());
        }
    }

    #[test]
    fn choose_examples() {
        assert_eq!(choose_triploid(10, 12).unwrap(), params(1, 2, 1, 6, 12));
        assert_eq!(choose_triploid(100, 50).unwrap(), params(12, 2, 12, 74, 50));
        assert_eq!(choose_triploid(20, 100).unwrap(), params(2, 10, 2, 6, 100));
        let p = choose_triploid(5, 30).unwrap();
        assert_eq!(p, params(1, 2, 1, 1, 30));
        assert_eq!(p.loop_count(), 26);
        assert!(matches!(choose_triploid(3, 10), Err(ConstructionError::TooSmall { .. })));
        assert!(matches!(choose_triploid(10, 3), Err(ConstructionError::TooSmall { .. })));
    }

    #[test]
    fn cases_cover_the_grid() {
        for n in 4..=512u64 {
            for m in 4..=512u64 {
                let case = selection_case(n, m).unwrap();
                let sq = n * n;
                let hyp = [
                    m <= 16 || (n <= 16 && m <= sq),
                    16 < m && m <= 2 * n - 4,
                    n > 16 && m > 16 && 2 * n - 4 < m && m <= sq,
                    sq < m,
                ];
                let first = hyp.iter().position(|&h| h).expect("some case applies");
                let expected = [SelectionCase::Small, SelectionCase::Sparse, SelectionCase::Medium, SelectionCase::Dense];
                assert_eq!(case, expected[first], "n={n} m={m}");
                let p = choose_triploid(n, m).unwrap();
                assert_eq!((p.vertex_count(), p.edge_count()), (n, m));
            }
        }
    }

    #[test]
    fn middle_row_matches_real_evaluation() {
        for n in 4..=512u64 {
            for m in 4..=(n * n).min(4096) {
                let s = ((n * n).saturating_sub(4 * m) as f64).sqrt();
                let t = ((n as f64 - s) / 2.0).ceil() as u64;
                assert_eq!(middle_row_size(n, m), t, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn rank_bound_examples() {
        let b = rank_bounds(11, 16);
        assert_eq!((b.eta_upper, b.nu_upper), (192, 176));
        let b = rank_bounds(4, 4);
        assert_eq!(b.eta_lower_numerator, 20);
        assert_eq!(b.to_json()["eta_lower"], "20/16384");
        assert_eq!(b.eta_lower(), ratio(20, 16384));
        for n in 1..40 {
            for m in 1..200 {
                let b = rank_bounds(n, m);
                assert!(b.eta_lower() <= ratio(b.eta_upper, 1));
                assert!(b.nu_lower() <= ratio(b.nu_upper, 1));
            }
        }
    }

    #[test]
    fn nu_ge_examples() {
        for (n, m, rh, loops) in [(10, 12, 1, 8), (100, 50, 144, 2), (4, 4, 1, 0)] {
            let r = verify_nu_ge(n, m).unwrap();
            assert_eq!((r.rh_family_size, r.loops), (rh, loops));
            assert!(r.inequality_1_holds && r.inequality_2_holds);
        }
    }
}
