//! Command-line front end.
//!
//! Exit codes: 0 success, 1 negative cycle, 2 usage or parse error,
//! 3 internal failure or differential mismatch. Logging is controlled by
//! `SNAKES_SP_LOG` (`off`, `info`, `debug`, `trace`).

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bench::{bench_run, load_instances, Algorithm};
use crate::classic::bellman_ford;
use crate::dimacs::{parse_dimacs, write_dimacs, write_dimacs_with_source, write_potentials, DimacsInstance};
use crate::gen::{gen_layered, gen_random};
use crate::graph::{DistanceLabels, Graph, NegativeCycle, SolveOutcome, VertexId};
use crate::pqueue::HeapKind;
use crate::snakes::Variant;
use crate::solver::{differential_check, persist_instance, reweight, solve_sssp, DiffVerdict, Reweighted, SolveConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE_CYCLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "snakes-sp", version, about = "Shortest paths with negative arc weights")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algo {
    Snakes,
    SnakesImproved,
    Bf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve single-source shortest paths on a DIMACS file.
    Solve {
        file: PathBuf,
        /// 1-based source; defaults to the file's source line, then 1.
        #[arg(long)]
        source: Option<usize>,
        #[arg(long, value_enum, default_value = "snakes")]
        algo: Algo,
        #[arg(long, value_enum, default_value = "tsv")]
        out: Format,
        #[arg(long, default_value = "quaternary")]
        heap: String,
    },
    /// Compute a nonnegative reweighting and its potentials.
    Reweight {
        file: PathBuf,
        /// Reweighted graph in DIMACS format.
        #[arg(long)]
        out: PathBuf,
        /// Potentials, one `<vertex> <value>` line per vertex.
        #[arg(long)]
        potentials: PathBuf,
        #[arg(long)]
        improved: bool,
    },
    /// Generate an instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Run algorithms over every .gr file in a directory and write CSV.
    Bench {
        #[arg(long)]
        instances: PathBuf,
        /// Comma-separated list of snakes-basic, snakes-improved,
        /// bellman-ford, dijkstra-if-nonnegative.
        #[arg(long, value_delimiter = ',', default_value = "snakes-basic,snakes-improved,bellman-ford,dijkstra-if-nonnegative")]
        algos: Vec<Algorithm>,
        #[arg(long)]
        csv: PathBuf,
    },
    /// Differential check of every solver configuration against Bellman-Ford.
    Check {
        file: PathBuf,
        #[arg(long)]
        source: Option<usize>,
        /// Directory receiving mismatching instances.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum GenKind {
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = -16, allow_negative_numbers = true)]
        w_min: i64,
        #[arg(long, default_value_t = 64, allow_negative_numbers = true)]
        w_max: i64,
        #[arg(long, default_value_t = 0.3)]
        neg_fraction: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    Layered {
        #[arg(long)]
        layers: usize,
        #[arg(long)]
        width: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<crate::error::Error> for Failure {
    fn from(e: crate::error::Error) -> Self {
        match e {
            crate::error::Error::Internal(_) | crate::error::Error::IterationBoundExceeded { .. } => {
                Failure::Internal(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn init_logging() {
    let env = env_logger::Env::default().filter_or("SNAKES_SP_LOG", "off");
    let _ = env_logger::Builder::from_env(env).try_init();
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    init_logging();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn read_instance(path: &Path) -> Result<DimacsInstance, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_dimacs(&bytes).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn pick_source(inst: &DimacsInstance, flag: Option<usize>) -> Result<VertexId, Failure> {
    match flag {
        Some(s) if s == 0 || s > inst.graph.n() => Err(Failure::Usage(format!(
            "source {s} out of range 1..={}",
            inst.graph.n()
        ))),
        Some(s) => Ok(s - 1),
        None => Ok(inst.source.unwrap_or(0)),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn dispatch(cmd: Command) -> Result<i32, Failure> {
    match cmd {
        Command::Solve {
            file,
            source,
            algo,
            out,
            heap,
        } => {
            let heap = match heap.as_str() {
                "quaternary" => HeapKind::Quaternary,
                "pairing" => HeapKind::Pairing,
                other => return Err(Failure::Usage(format!("unknown heap `{other}`"))),
            };
            let inst = read_instance(&file)?;
            let s = pick_source(&inst, source)?;
            let cfg = SolveConfig::default().with_heap(heap);
            let outcome = match algo {
                Algo::Snakes => solve_sssp(&inst.graph, s, &cfg)?,
                Algo::SnakesImproved => solve_sssp(&inst.graph, s, &cfg.with_variant(Variant::Improved))?,
                Algo::Bf => bellman_ford(&inst.graph, s)?,
            };
            print!("{}", render_outcome(&inst.graph, s, &outcome, out));
            Ok(match outcome {
                SolveOutcome::ShortestPaths(_) => EXIT_OK,
                SolveOutcome::NegativeCycle(_) => EXIT_NEGATIVE_CYCLE,
            })
        }
        Command::Reweight {
            file,
            out,
            potentials,
            improved,
        } => {
            let inst = read_instance(&file)?;
            let variant = if improved { Variant::Improved } else { Variant::Basic };
            match reweight(&inst.graph, &SolveConfig::default().with_variant(variant))? {
                Reweighted::Artifact(a) => {
                    write_file(&out, &write_dimacs_with_source(&a.graph, inst.source))?;
                    write_file(&potentials, &write_potentials(&a.potentials))?;
                    log::info!("reweighted in {} iterations (bound {})", a.iterations, a.bound);
                    Ok(EXIT_OK)
                }
                Reweighted::NegativeCycle(c) => {
                    print!("{}", render_cycle_tsv(&inst.graph, &c));
                    Ok(EXIT_NEGATIVE_CYCLE)
                }
            }
        }
        Command::Gen { kind } => {
            let (text, out) = match kind {
                GenKind::Random {
                    n,
                    m,
                    w_min,
                    w_max,
                    neg_fraction,
                    seed,
                    out,
                } => {
                    let g = gen_random(n, m, w_min, w_max, neg_fraction, seed)?;
                    let header = format!(
                        "c random n={n} m={m} w=[{w_min},{w_max}] neg={neg_fraction}\nc seed {seed}\n"
                    );
                    (header + &write_dimacs(&g), out)
                }
                GenKind::Layered {
                    layers,
                    width,
                    seed,
                    out,
                } => {
                    let g = gen_layered(layers, width, seed)?;
                    let header = format!("c layered layers={layers} width={width}\nc seed {seed}\n");
                    (header + &write_dimacs_with_source(&g, Some(0)), out)
                }
            };
            write_file(&out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Bench {
            instances,
            algos,
            csv,
        } => {
            let insts = load_instances(&instances).map_err(|e| Failure::Usage(e.to_string()))?;
            let records = bench_run(&insts, &algos, &csv).map_err(|e| Failure::Internal(e.to_string()))?;
            log::info!("{} records written to {}", records.len(), csv.display());
            Ok(EXIT_OK)
        }
        Command::Check { file, source, corpus } => {
            let inst = read_instance(&file)?;
            let s = pick_source(&inst, source)?;
            let mut failed = false;
            for variant in [Variant::Basic, Variant::Improved] {
                for heap in [HeapKind::Quaternary, HeapKind::Pairing] {
                    let cfg = SolveConfig::default().with_variant(variant).with_heap(heap);
                    match differential_check(&inst.graph, s, &cfg)? {
                        DiffVerdict::Pass => println!("pass\t{variant:?}\t{heap:?}"),
                        DiffVerdict::Mismatch(msg) => {
                            failed = true;
                            println!("mismatch\t{variant:?}\t{heap:?}\t{msg}");
                            if let Some(dir) = &corpus {
                                let stem = file.file_stem().map_or("instance".into(), |s| s.to_string_lossy());
                                let name = format!("{stem}-{variant:?}-{heap:?}").to_lowercase();
                                persist_instance(dir, &name, &inst.graph, s, &msg)
                                    .map_err(|e| Failure::Internal(e.to_string()))?;
                            }
                        }
                    }
                }
            }
            Ok(if failed { EXIT_FAILURE } else { EXIT_OK })
        }
    }
}

fn predecessor(g: &Graph, labels: &DistanceLabels, v: VertexId) -> Option<VertexId> {
    labels.parent[v].map(|a| g.arcs()[a].source)
}

fn render_cycle_tsv(g: &Graph, c: &NegativeCycle) -> String {
    let mut s = format!("negative-cycle\t{}\n", c.total_weight(g).unwrap_or_default());
    for &id in &c.arcs {
        let a = g.arcs()[id];
        s.push_str(&format!("a\t{}\t{}\t{}\n", a.source + 1, a.target + 1, a.weight));
    }
    s
}

/// Renders an outcome with 1-based vertex ids. TSV rows are
/// `vertex, distance|inf, predecessor|-`.
fn render_outcome(g: &Graph, source: VertexId, outcome: &SolveOutcome, format: Format) -> String {
    match (outcome, format) {
        (SolveOutcome::ShortestPaths(l), Format::Tsv) => {
            let mut s = String::from("vertex\tdist\tpred\n");
            for v in 0..g.n() {
                let d = l.dist[v].map_or("inf".to_string(), |d| d.to_string());
                let p = predecessor(g, l, v).map_or("-".to_string(), |p| (p + 1).to_string());
                s.push_str(&format!("{}\t{d}\t{p}\n", v + 1));
            }
            s
        }
        (SolveOutcome::ShortestPaths(l), Format::Json) => {
            let pred: Vec<Option<VertexId>> = (0..g.n()).map(|v| predecessor(g, l, v).map(|p| p + 1)).collect();
            let value = json!({
                "verdict": "shortest-paths",
                "source": source + 1,
                "dist": l.dist,
                "pred": pred,
            });
            format!("{value}\n")
        }
        (SolveOutcome::NegativeCycle(c), Format::Tsv) => render_cycle_tsv(g, c),
        (SolveOutcome::NegativeCycle(c), Format::Json) => {
            let arcs: Vec<_> = c
                .arcs
                .iter()
                .map(|&id| {
                    let a = g.arcs()[id];
                    json!([a.source + 1, a.target + 1, a.weight])
                })
                .collect();
            let value = json!({
                "verdict": "negative-cycle",
                "weight": c.total_weight(g).unwrap_or_default() as i64,
                "cycle": arcs,
            });
            format!("{value}\n")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_three_vertex_example() {
        let g = Graph::from_triples(3, &[(0, 1, 2), (1, 2, -5), (0, 2, 0)]).unwrap();
        let out = solve_sssp(&g, 0, &SolveConfig::default()).unwrap();
        assert_eq!(
            render_outcome(&g, 0, &out, Format::Tsv),
            "vertex\tdist\tpred\n1\t0\t-\n2\t2\t1\n3\t-3\t2\n"
        );
        let json: serde_json::Value = serde_json::from_str(&render_outcome(&g, 0, &out, Format::Json)).unwrap();
        assert_eq!(json["dist"], json!([0, 2, -3]));
    }

    #[test]
    fn renders_cycle() {
        let g = Graph::from_triples(2, &[(0, 1, -1), (1, 0, 0)]).unwrap();
        let out = solve_sssp(&g, 0, &SolveConfig::default()).unwrap();
        let text = render_outcome(&g, 0, &out, Format::Tsv);
        assert!(text.starts_with("negative-cycle\t-1\n"), "{text}");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["snakes-sp", "frobnicate"]), EXIT_USAGE);
        assert_eq!(run(["snakes-sp", "solve", "/nonexistent/file.gr"]), EXIT_USAGE);
        assert_eq!(run(["snakes-sp", "--help"]), EXIT_OK);
    }
}
