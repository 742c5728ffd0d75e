//! Grid runner comparing measured operation counts with the bounds.
//!
//! Random rows use commutative potential labelings so every run goes through
//! all phases. Triploid rows use the loop indicator labeling on the triploid
//! chosen for `(n, m)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::adversarial::{loop_indicator_labeling, AdversarialError};
use crate::constructions::{choose_triploid, triploid, verify_nu_ge, ConstructionError};
use crate::diagram::Diagram;
use crate::random::{potential_labeling, random_graph};
use crate::verifier::{bound_eq_checks, bound_mults, refined_bound_eq_checks, refined_bound_mults, verify, VerifyOptions};

/// Largest edge count a grid cell may ask for.
pub const MAX_BENCH_EDGES: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchError {
    #[error("m = {0} exceeds the limit of {MAX_BENCH_EDGES} edges")]
    TooManyEdges(u64),
    #[error("n must be positive")]
    NoVertices,
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Adversarial(#[from] AdversarialError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub n_grid: Vec<u64>,
    pub m_grid: Vec<u64>,
    pub seed: u64,
    pub instances: usize,
    pub triploids: bool,
}

impl BenchConfig {
    /// `n ∈ {4, 8, 16, 32, 64}`, `m` powers of two from 4 to 4096.
    pub fn standard(seed: u64) -> Self {
        BenchConfig {
            n_grid: vec![4, 8, 16, 32, 64],
            m_grid: (2..=12).map(|k| 1u64 << k).collect(),
            seed,
            instances: 1,
            triploids: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Random,
    Triploid,
}

impl RowKind {
    fn name(self) -> &'static str {
        match self {
            RowKind::Random => "random",
            RowKind::Triploid => "triploid",
        }
    }
}

/// Per-triploid certificate columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriploidColumns {
    pub rh_family_size: u64,
    pub loops: u64,
    pub nu_ge: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub kind: RowKind,
    pub n: u64,
    pub m: u64,
    pub instance: usize,
    pub commutative: bool,
    pub reduced_edges: u64,
    pub eq_total: u64,
    pub mult_total: u64,
    pub bound_eq: u128,
    pub bound_mult: u128,
    pub refined_bound_eq: u128,
    pub refined_bound_mult: u128,
    pub within_bounds: bool,
    pub triploid: Option<TriploidColumns>,
}

pub const CSV_HEADER: &str = "kind,n,m,instance,commutative,reduced_edges,eq_total,mult_total,bound_eq,bound_mult,\
refined_bound_eq,refined_bound_mult,within_bounds,rh_family_size,loops,nu_ge";

impl BenchRow {
    pub fn to_csv(&self) -> String {
        let (rh, loops, nu) = match self.triploid {
            Some(t) => (t.rh_family_size.to_string(), t.loops.to_string(), t.nu_ge.to_string()),
            None => (String::new(), String::new(), String::new()),
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.kind.name(),
            self.n,
            self.m,
            self.instance,
            self.commutative,
            self.reduced_edges,
            self.eq_total,
            self.mult_total,
            self.bound_eq,
            self.bound_mult,
            self.refined_bound_eq,
            self.refined_bound_mult,
            self.within_bounds,
            rh,
            loops,
            nu
        )
    }
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

/// Verifies `d` and fills the count and bound columns.
pub fn measure(kind: RowKind, instance: usize, d: &Diagram) -> BenchRow {
    let g = d.graph();
    let n = g.vertex_count() as u128;
    let m = g.edge_count() as u128;
    let report = verify(d, VerifyOptions::default());
    let c = report.counters;
    let reduced = c.reduced_edges as u128;
    let eq = c.eq_total() as u128;
    let mult = c.mult_total() as u128;
    let (be, bm) = (bound_eq_checks(n, m), bound_mults(n, m));
    let (re, rm) = (refined_bound_eq_checks(n, reduced, m), refined_bound_mults(n, reduced));
    BenchRow {
        kind,
        n: n as u64,
        m: m as u64,
        instance,
        commutative: report.commutative,
        reduced_edges: c.reduced_edges,
        eq_total: c.eq_total(),
        mult_total: c.mult_total(),
        bound_eq: be,
        bound_mult: bm,
        refined_bound_eq: re,
        refined_bound_mult: rm,
        within_bounds: eq <= re && re <= be && mult <= rm && rm <= bm,
        triploid: None,
    }
}

/// Runs the grid. Rows are ordered by `(n, m)`, random instances first, then
/// the triploid row. Each cell draws from its own stream of the seed, so a
/// cell's rows do not depend on the rest of the grid.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>, BenchError> {
    let mut rows = Vec::new();
    let mut ns = cfg.n_grid.clone();
    let mut ms = cfg.m_grid.clone();
    ns.sort_unstable();
    ns.dedup();
    ms.sort_unstable();
    ms.dedup();
    for &n in &ns {
        if n == 0 {
            return Err(BenchError::NoVertices);
        }
        for &m in &ms {
            if m > MAX_BENCH_EDGES {
                return Err(BenchError::TooManyEdges(m));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream((n << 32) ^ m);
            for i in 0..cfg.instances {
                let g = random_graph(&mut rng, n as usize, m as usize);
                let d = potential_labeling(&mut rng, &g);
                rows.push(measure(RowKind::Random, i, &d));
            }
            if cfg.triploids && n >= 4 && m >= 4 {
                rows.push(triploid_row(n, m)?);
            }
        }
    }
    Ok(rows)
}

/// Loop-indicator run on the triploid for `(n, m)`, with its certificates.
pub fn triploid_row(n: u64, m: u64) -> Result<BenchRow, BenchError> {
    let p = choose_triploid(n, m)?;
    let g = triploid(&p)?;
    let d = loop_indicator_labeling(&g)?;
    let nu = verify_nu_ge(n, m)?;
    let mut row = measure(RowKind::Triploid, 0, &d);
    row.triploid = Some(TriploidColumns {
        rh_family_size: nu.rh_family_size,
        loops: nu.loops,
        nu_ge: nu.inequality_1_holds && nu.inequality_2_holds,
    });
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triploid_11_16_within_bound() {
        let row = triploid_row(11, 16).unwrap();
        assert!(row.commutative);
        assert!(row.eq_total <= 192);
        assert_eq!(row.bound_eq, 192);
        assert!(row.within_bounds);
    }

    #[test]
    fn small_grid_is_deterministic() {
        let cfg = BenchConfig {
            n_grid: vec![4, 8],
            m_grid: vec![4, 16, 64],
            seed: 11,
            instances: 2,
            triploids: true,
        };
        let a = to_csv(&run_bench(&cfg).unwrap());
        let b = to_csv(&run_bench(&cfg).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 1 + 2 * 3 * 3);
        assert!(a.lines().skip(1).all(|l| l.contains(",true,")));
    }

    #[test]
    fn rejects_huge_cells() {
        let cfg = BenchConfig {
            n_grid: vec![4],
            m_grid: vec![MAX_BENCH_EDGES + 1],
            seed: 0,
            instances: 1,
            triploids: false,
        };
        assert_eq!(run_bench(&cfg), Err(BenchError::TooManyEdges(MAX_BENCH_EDGES + 1)));
    }
}
