//! Benchmark harness: one CSV record per (instance, algorithm) cell.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classic::{bellman_ford_with, dijkstra_with, BellmanFordMode};
use crate::counters::Counters;
use crate::dimacs::{parse_dimacs, ParseError};
use crate::graph::{has_negative_arc, Graph, SolveOutcome, VertexId};
use crate::snakes::Variant;
use crate::solver::{solve_with_report, SolveConfig};

pub const CSV_HEADER: &str = "name,n,m,neg,algo,verdict,iters,c,relaxations,extract_mins,ns,seed";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    SnakesBasic,
    SnakesImproved,
    BellmanFord,
    DijkstraIfNonnegative,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::SnakesBasic,
        Algorithm::SnakesImproved,
        Algorithm::BellmanFord,
        Algorithm::DijkstraIfNonnegative,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::SnakesBasic => "snakes-basic",
            Algorithm::SnakesImproved => "snakes-improved",
            Algorithm::BellmanFord => "bellman-ford",
            Algorithm::DijkstraIfNonnegative => "dijkstra-if-nonnegative",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.id() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

#[derive(Clone, Debug)]
pub struct BenchInstance {
    pub name: String,
    pub graph: Graph,
    pub source: VertexId,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub neg: usize,
    pub algo: String,
    /// `shortest-paths`, `negative-cycle`, or `inapplicable`.
    pub verdict: String,
    pub iters: usize,
    pub c: usize,
    pub relaxations: u64,
    pub extract_mins: u64,
    pub ns: u128,
    pub seed: Option<u64>,
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{instance} / {algo}: {source}")]
    Solve {
        instance: String,
        algo: Algorithm,
        source: crate::error::Error,
    },
}

fn verdict(outcome: &SolveOutcome) -> &'static str {
    match outcome {
        SolveOutcome::ShortestPaths(_) => "shortest-paths",
        SolveOutcome::NegativeCycle(_) => "negative-cycle",
    }
}

/// Runs one cell. Counters are deterministic; only `ns` varies between runs.
pub fn bench_cell(inst: &BenchInstance, algo: Algorithm) -> Result<BenchRecord, BenchError> {
    let g = &inst.graph;
    let mut record = BenchRecord {
        name: inst.name.clone(),
        n: g.n(),
        m: g.m(),
        neg: g.negative_arc_count(),
        algo: algo.id().to_string(),
        verdict: String::new(),
        iters: 0,
        c: 1,
        relaxations: 0,
        extract_mins: 0,
        ns: 0,
        seed: inst.seed,
    };
    let wrap = |source| BenchError::Solve {
        instance: inst.name.clone(),
        algo,
        source,
    };
    let start = Instant::now();
    match algo {
        Algorithm::SnakesBasic | Algorithm::SnakesImproved => {
            let variant = if algo == Algorithm::SnakesBasic {
                Variant::Basic
            } else {
                Variant::Improved
            };
            let cfg = SolveConfig::default().with_variant(variant);
            let report = solve_with_report(g, inst.source, &cfg).map_err(wrap)?;
            record.ns = start.elapsed().as_nanos();
            record.verdict = verdict(&report.outcome).into();
            if let Some(a) = &report.artifact {
                record.iters = a.iterations;
                record.c = a.repeats;
            }
            record.relaxations = report.counters.relaxations;
            record.extract_mins = report.counters.extract_mins;
        }
        Algorithm::BellmanFord => {
            let run = bellman_ford_with(g, inst.source, BellmanFordMode::EarlyExit).map_err(wrap)?;
            record.ns = start.elapsed().as_nanos();
            record.verdict = verdict(&run.outcome).into();
            record.iters = run.rounds;
            record.relaxations = run.counters.relaxations;
        }
        Algorithm::DijkstraIfNonnegative => {
            if has_negative_arc(g) {
                record.verdict = "inapplicable".into();
                return Ok(record);
            }
            let mut counters = Counters::default();
            dijkstra_with(g, inst.source, Default::default(), &mut counters).map_err(wrap)?;
            record.ns = start.elapsed().as_nanos();
            record.verdict = "shortest-paths".into();
            record.relaxations = counters.relaxations;
            record.extract_mins = counters.extract_mins;
        }
    }
    Ok(record)
}

/// Runs every (instance, algorithm) cell, in parallel, and writes the
/// records to `out` in instance-major order.
pub fn bench_run(
    instances: &[BenchInstance],
    algos: &[Algorithm],
    out: &Path,
) -> Result<Vec<BenchRecord>, BenchError> {
    let cells: Vec<(&BenchInstance, Algorithm)> = instances
        .iter()
        .flat_map(|i| algos.iter().map(move |&a| (i, a)))
        .collect();
    let records = cells
        .par_iter()
        .map(|&(inst, algo)| bench_cell(inst, algo))
        .collect::<Result<Vec<_>, _>>()?;
    let mut writer = csv::Writer::from_path(out)?;
    for r in &records {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(records)
}

pub fn read_records(path: &Path) -> Result<Vec<BenchRecord>, BenchError> {
    let mut reader = csv::Reader::from_path(path)?;
    Ok(reader.deserialize().collect::<Result<_, _>>()?)
}

/// Loads every `.gr` file in `dir`, sorted by file name. The source comes
/// from the file's `n <v> s` line (default vertex 1) and the seed from a
/// `c seed <u64>` comment, if present.
pub fn load_instances(dir: &Path) -> Result<Vec<BenchInstance>, BenchError> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "gr"));
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let bytes = fs::read(&path)?;
            let inst = parse_dimacs(&bytes).map_err(|source| BenchError::Parse {
                path: path.clone(),
                source,
            })?;
            let seed = String::from_utf8_lossy(&bytes).lines().find_map(|l| {
                l.strip_prefix("c seed ").and_then(|s| s.trim().parse().ok())
            });
            Ok(BenchInstance {
                name: path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default(),
                graph: inst.graph,
                source: inst.source.unwrap_or(0),
                seed,
            })
        })
        .collect()
}
