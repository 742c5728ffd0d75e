use std::fs;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use commdiag::adversarial::{
    loop_indicator_labeling, loop_kernel_labeling, nz_edge_labeling, nz_pair_labeling, rhomboid_gap_labeling,
};
use commdiag::bench::{run_bench, to_csv, BenchConfig};
use commdiag::constructions::{
    choose_triploid, explicit_rhomboid_family, greedy_disjoint_rhomboids, rank_bounds, triploid, verify_nu_ge,
    Rhomboid, TriploidParams, DEFAULT_RHOMBOID_BUDGET,
};
use commdiag::diagram::{parse_diagram, parse_graph, serialize_diagram, serialize_graph};
use commdiag::oracle::{oracle_check, DEFAULT_WALK_BUDGET};
use commdiag::random::random_graph;
use commdiag::{verify, OrientedGraph, VerifyOptions};

/// Commutativity checks for monoid-labeled graphs.
#[derive(Parser)]
#[command(name = "commdiag", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a diagram file; exit 0 if commutative, 1 if not.
    Verify {
        path: PathBuf,
        /// Include every checked relation and product in the report.
        #[arg(long)]
        trace: bool,
        /// Also write the report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Emit a graph: a triploid or a seeded random multigraph.
    Gen {
        #[command(flatten)]
        source: TriploidSource,
        /// Random multigraph with N vertices and M edges.
        #[arg(long, num_args = 2, value_names = ["N", "M"], requires = "seed")]
        random: Option<Vec<u64>>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Emit an adversarial labeling as a diagram.
    Fixtures {
        name: Fixture,
        #[command(flatten)]
        graph: GraphSource,
        /// Drop loops from the graph first.
        #[arg(long)]
        strip_loops: bool,
        /// Edge for nz-edge, or the two edges for nz-pair.
        #[arg(long, value_delimiter = ',')]
        edges: Vec<usize>,
        /// Rhomboid a,b,c,d for rhomboid-gap.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        rhomboid: Option<Vec<usize>>,
        /// Position in the explicit family of the triploid, for rhomboid-gap.
        #[arg(long, conflicts_with = "rhomboid")]
        rhomboid_index: Option<usize>,
        /// One integer per loop, for loop-kernel.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        kernel: Vec<i64>,
    },
    /// List disjoint rhomboids of a graph.
    Rhomboids {
        #[command(flatten)]
        graph: GraphSource,
        /// The explicit family of a triploid.
        #[arg(long, conflicts_with = "greedy")]
        explicit: bool,
        /// A greedy family in ascending edge-id order.
        #[arg(long)]
        greedy: bool,
        #[arg(long, default_value_t = DEFAULT_RHOMBOID_BUDGET)]
        budget: usize,
    },
    /// Rank bounds for n vertices and m edges.
    Bounds {
        n: u64,
        m: u64,
        /// Also check the triploid certificate against the lower bounds.
        #[arg(long)]
        nu_ge: bool,
    },
    /// Brute-force check of a diagram file by walk enumeration.
    Oracle {
        path: PathBuf,
        /// Walk length bound; defaults to the vertex count.
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_WALK_BUDGET)]
        budget: usize,
    },
    /// Operation counts against the bounds over a grid, as CSV.
    Bench {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_values_t = [4u64, 8, 16, 32, 64])]
        n_grid: Vec<u64>,
        /// Defaults to powers of two from 4 to 4096.
        #[arg(long, value_delimiter = ',')]
        m_grid: Vec<u64>,
        /// Random instances per cell.
        #[arg(long, default_value_t = 1)]
        instances: usize,
        #[arg(long)]
        no_triploids: bool,
        /// Write CSV here instead of standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Fixture {
    NzEdge,
    NzPair,
    RhomboidGap,
    LoopIndicator,
    LoopKernel,
}

#[derive(Args)]
struct TriploidSource {
    /// Triploid with exactly N vertices and M edges.
    #[arg(long, num_args = 2, value_names = ["N", "M"])]
    fit: Option<Vec<u64>>,
    /// Triploid T(n1,n2,n3,n0,e).
    #[arg(long, value_delimiter = ',', num_args = 1, value_name = "N1,N2,N3,N0,E")]
    triploid: Option<Vec<u64>>,
}

impl TriploidSource {
    fn params(&self) -> Result<Option<TriploidParams>> {
        match (&self.fit, &self.triploid) {
            (Some(_), Some(_)) => bail!("--fit and --triploid are exclusive"),
            (Some(f), None) => Ok(Some(choose_triploid(f[0], f[1])?)),
            (None, Some(t)) => {
                let [n1, n2, n3, n0, e] = t[..] else {
                    bail!("--triploid takes five comma-separated values");
                };
                Ok(Some(TriploidParams::new(n1, n2, n3, n0, e)?))
            }
            (None, None) => Ok(None),
        }
    }
}

#[derive(Args)]
struct GraphSource {
    #[command(flatten)]
    triploid: TriploidSource,
    /// Graph or diagram JSON file.
    #[arg(long)]
    graph: Option<PathBuf>,
}

impl GraphSource {
    /// The graph and, if it came from parameters, the triploid parameters.
    fn load(&self) -> Result<(OrientedGraph, Option<TriploidParams>)> {
        let params = self.triploid.params()?;
        match (params, &self.graph) {
            (Some(_), Some(_)) => bail!("give either a graph file or triploid parameters"),
            (Some(p), None) => Ok((triploid(&p)?, Some(p))),
            (None, Some(path)) => {
                let text = read(path)?;
                let g = parse_graph(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
                Ok((g, None))
            }
            (None, None) => bail!("no graph given: use --graph, --fit or --triploid"),
        }
    }
}

fn read(path: &FsPath) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.write_all(b"\n")) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn rhomboid_json(r: &Rhomboid) -> Value {
    json!([r.a, r.b, r.c, r.d])
}

fn verdict(commutative: bool) -> ExitCode {
    if commutative {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify { path, trace, report } => {
            let d = parse_diagram(&read(&path)?).map_err(|e| anyhow!("{}: {e}", path.display()))?;
            let r = verify(&d, VerifyOptions { trace });
            let text = r.to_json().to_string();
            if let Some(out) = report {
                fs::write(&out, format!("{text}\n")).with_context(|| format!("cannot write {}", out.display()))?;
            }
            emit(&text)?;
            Ok(verdict(r.commutative))
        }
        Command::Gen { source, random, seed } => {
            let params = source.params()?;
            let g = match (params, random) {
                (Some(_), Some(_)) => bail!("--random cannot be combined with --fit or --triploid"),
                (Some(p), None) => triploid(&p)?,
                (None, Some(nm)) => {
                    if nm[0] == 0 {
                        bail!("a random graph needs at least one vertex");
                    }
                    let seed = seed.ok_or_else(|| anyhow!("--random requires --seed"))?;
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    random_graph(&mut rng, nm[0] as usize, nm[1] as usize)
                }
                (None, None) => bail!("nothing to generate: use --fit, --triploid or --random"),
            };
            emit(&serialize_graph(&g))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Fixtures {
            name,
            graph,
            strip_loops,
            edges,
            rhomboid,
            rhomboid_index,
            kernel,
        } => {
            let (mut g, params) = graph.load()?;
            if strip_loops {
                g = g.without_loops();
            }
            let d = match name {
                Fixture::NzEdge => match edges[..] {
                    [e] => nz_edge_labeling(&g, e)?,
                    _ => bail!("nz-edge takes exactly one edge via --edges"),
                },
                Fixture::NzPair => match edges[..] {
                    [e, f] => nz_pair_labeling(&g, e, f)?,
                    _ => bail!("nz-pair takes two edges via --edges e,f"),
                },
                Fixture::RhomboidGap => {
                    let r = match (rhomboid, rhomboid_index) {
                        (Some(r), None) => match r[..] {
                            [a, b, c, d] => Rhomboid::new(a, b, c, d),
                            _ => bail!("--rhomboid takes four comma-separated edges"),
                        },
                        (None, Some(i)) => {
                            let p = params.ok_or_else(|| anyhow!("--rhomboid-index needs --fit or --triploid"))?;
                            let family = explicit_rhomboid_family(&p)?;
                            *family
                                .get(i)
                                .ok_or_else(|| anyhow!("index {i} out of range, family has {}", family.len()))?
                        }
                        _ => bail!("rhomboid-gap needs --rhomboid or --rhomboid-index"),
                    };
                    rhomboid_gap_labeling(&g, &r)?
                }
                Fixture::LoopIndicator => loop_indicator_labeling(&g)?,
                Fixture::LoopKernel => {
                    let v: Vec<_> = kernel.iter().map(|&x| x.into()).collect();
                    loop_kernel_labeling(&g, &v)?
                }
            };
            emit(&serialize_diagram(&d))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Rhomboids {
            graph,
            explicit,
            greedy,
            budget,
        } => {
            let (g, params) = graph.load()?;
            let family = if explicit {
                let p = params.ok_or_else(|| anyhow!("--explicit needs --fit or --triploid"))?;
                explicit_rhomboid_family(&p)?
            } else if greedy {
                greedy_disjoint_rhomboids(&g, budget)?
            } else {
                bail!("choose --explicit or --greedy");
            };
            let out = json!({
                "count": family.len(),
                "rhomboids": family.iter().map(rhomboid_json).collect::<Vec<_>>(),
            });
            emit(&out.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { n, m, nu_ge } => {
            let mut out = rank_bounds(n, m).to_json();
            if nu_ge {
                out["nu_ge"] = verify_nu_ge(n, m)?.to_json();
            }
            emit(&out.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { path, max_len, budget } => {
            let d = parse_diagram(&read(&path)?).map_err(|e| anyhow!("{}: {e}", path.display()))?;
            let len = max_len.unwrap_or(d.graph().vertex_count());
            let witness = oracle_check(&d, len, budget)?;
            let commutative = witness.is_none();
            let out = json!({
                "commutative": commutative,
                "counters": null,
                "witness": witness,
                "trace": null,
            });
            emit(&out.to_string())?;
            Ok(verdict(commutative))
        }
        Command::Bench {
            seed,
            n_grid,
            m_grid,
            instances,
            no_triploids,
            csv,
        } => {
            let mut cfg = BenchConfig::standard(seed);
            cfg.n_grid = n_grid;
            if !m_grid.is_empty() {
                cfg.m_grid = m_grid;
            }
            cfg.instances = instances;
            cfg.triploids = !no_triploids;
            let rows = run_bench(&cfg)?;
            let text = to_csv(&rows);
            match csv {
                Some(out) => fs::write(&out, &text).with_context(|| format!("cannot write {}", out.display()))?,
                None => std::io::stdout().lock().write_all(text.as_bytes())?,
            }
            Ok(verdict(rows.iter().all(|r| r.within_bounds)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
