//! End-to-end pipeline: zero-cycle contraction, reweighting, a final
//! Dijkstra, and recovery of distances on the input graph.

use std::fs;
use std::path::{Path, PathBuf};

use crate::classic::{bellman_ford, dijkstra_with};
use crate::contraction::{contract_zero_cycles, expand_potentials, ContractOutcome, Contraction};
use crate::counters::Counters;
use crate::dimacs;
use crate::error::{Error, Result};
use crate::graph::{ArcId, Digraph, DistanceLabels, Graph, NegativeCycle, SolveOutcome, VertexId, Weight};
use crate::pqueue::HeapKind;
use crate::snakes::{ReweightState, RunOptions, RunOutcome, Variant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    pub variant: Variant,
    pub heap: HeapKind,
    /// Zero-cycle contraction before the loop and zero-cycle handling inside
    /// expand. Only tests turn this off.
    pub contraction: bool,
    pub record_counters: bool,
    /// Treat exceeding the iteration bound on a cycle-free instance as an
    /// error rather than a flagged overrun.
    pub strict_bound: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            variant: Variant::Basic,
            heap: HeapKind::Quaternary,
            contraction: true,
            record_counters: true,
            strict_bound: false,
        }
    }
}

impl SolveConfig {
    pub fn with_variant(self, variant: Variant) -> Self {
        SolveConfig { variant, ..self }
    }

    pub fn with_heap(self, heap: HeapKind) -> Self {
        SolveConfig { heap, ..self }
    }
}

/// Nonnegative reweighting of an input graph: same vertices and arc ids,
/// `weight(u,v) = original(u,v) + potentials[u] - potentials[v]`.
#[derive(Clone, Debug)]
pub struct ReweightArtifact {
    pub graph: Graph,
    pub potentials: Vec<Weight>,
    pub iterations: usize,
    /// Expands per iteration.
    pub repeats: usize,
    pub bound: usize,
    pub bound_exceeded: bool,
    /// Vertex count after zero-cycle contraction.
    pub contracted_n: usize,
    pub counters: Counters,
}

#[derive(Clone, Debug)]
pub enum Reweighted {
    Artifact(ReweightArtifact),
    NegativeCycle(NegativeCycle),
}

fn checked_certificate(g: &Graph, cycle: NegativeCycle) -> Result<NegativeCycle> {
    if cycle.is_valid(g) {
        Ok(cycle)
    } else {
        Err(Error::Internal(format!(
            "emitted certificate {:?} does not verify",
            cycle.arcs
        )))
    }
}

pub fn reweight(g: &Graph, cfg: &SolveConfig) -> Result<Reweighted> {
    let contraction: Option<Contraction> = if cfg.contraction {
        match contract_zero_cycles(g, &vec![0; g.n()]) {
            ContractOutcome::NegativeCycle(cycle) => {
                return checked_certificate(g, cycle).map(Reweighted::NegativeCycle)
            }
            ContractOutcome::Contracted(c) => Some(c),
        }
    } else {
        None
    };
    let work = contraction.as_ref().map_or_else(|| g.clone(), |c| c.graph.clone());
    let contracted_n = work.n();
    let mut state = ReweightState::new(work, cfg.heap);
    let opts = RunOptions {
        variant: cfg.variant,
        zero_cycles: cfg.contraction,
        strict_bound: cfg.strict_bound,
    };
    let summary = match state.run(opts)? {
        RunOutcome::NegativeCycle(cycle) => {
            let cycle = match &contraction {
                Some(c) => c.lift_cycle(g, &cycle),
                None => cycle,
            };
            return checked_certificate(g, cycle).map(Reweighted::NegativeCycle);
        }
        RunOutcome::Converged(s) => s,
    };

    let potentials: Vec<Weight> = match &contraction {
        Some(c) => expand_potentials(&c.map, state.cumulative()).into_inner(),
        None => state.cumulative().to_vec(),
    };
    let mut weights = Vec::with_capacity(g.m());
    for a in g.arcs() {
        let w = a
            .weight
            .checked_add(potentials[a.source])
            .and_then(|w| w.checked_sub(potentials[a.target]))
            .ok_or(Error::Overflow {
                context: "final reweighting",
            })?;
        if w < 0 {
            return Err(Error::Internal(format!(
                "arc ({}, {}) still negative after reweighting",
                a.source, a.target
            )));
        }
        weights.push(w);
    }
    Ok(Reweighted::Artifact(ReweightArtifact {
        graph: g.with_weights(weights),
        potentials,
        iterations: summary.iterations,
        repeats: summary.repeats,
        bound: summary.bound,
        bound_exceeded: summary.bound_exceeded,
        contracted_n,
        counters: if cfg.record_counters {
            state.counters()
        } else {
            Counters::default()
        },
    }))
}

impl ReweightArtifact {
    /// Shortest paths in the input graph from `source`, via Dijkstra on the
    /// reweighted graph: `dist(v) = dist_reweighted(v) - D[source] + D[v]`.
    pub fn distances_from(
        &self,
        source: VertexId,
        heap: HeapKind,
        counters: &mut Counters,
    ) -> Result<DistanceLabels> {
        let mut labels = dijkstra_with(&self.graph, source, heap, counters)?;
        let ds = self.potentials[source];
        for (v, dist) in labels.dist.iter_mut().enumerate() {
            if let Some(x) = dist {
                *x = *x - ds + self.potentials[v];
            }
        }
        Ok(labels)
    }

    /// Number of arcs breaking the reweighting identity or nonnegativity.
    pub fn identity_violations(&self, original: &Graph) -> usize {
        original
            .arcs()
            .iter()
            .zip(self.graph.arcs())
            .filter(|(o, r)| {
                r.weight < 0
                    || r.weight as i128
                        - (o.weight as i128 + self.potentials[o.source] as i128
                            - self.potentials[o.target] as i128)
                        != 0
            })
            .count()
    }
}

/// Outcome of a solve together with the reweighting statistics.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    /// Reweighting of `solved_graph`; absent when a negative cycle was found.
    pub artifact: Option<ReweightArtifact>,
    /// The input restricted to arcs leaving vertices reachable from the
    /// source. Vertex ids are unchanged; arc ids are renumbered.
    pub solved_graph: Graph,
    /// Input arc id of every arc of `solved_graph`.
    pub arc_origin: Vec<ArcId>,
    pub counters: Counters,
}

/// Drops every arc whose tail is unreachable from `source`, so that only
/// negative cycles the source can reach affect the verdict.
fn restrict_to_reachable(g: &Graph, source: VertexId) -> (Graph, Vec<ArcId>) {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![source];
    seen[source] = true;
    while let Some(u) = stack.pop() {
        for &id in g.out_arcs(u) {
            let v = g.arc(id).target;
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    let (arcs, origin): (Vec<_>, Vec<_>) = g
        .arcs()
        .iter()
        .enumerate()
        .filter(|(_, a)| seen[a.source])
        .map(|(id, a)| (*a, id))
        .unzip();
    (Graph::build_unchecked(g.n(), arcs), origin)
}

pub fn solve_sssp(g: &Graph, source: VertexId, cfg: &SolveConfig) -> Result<SolveOutcome> {
    Ok(solve_with_report(g, source, cfg)?.outcome)
}

pub fn solve_with_report(g: &Graph, source: VertexId, cfg: &SolveConfig) -> Result<SolveReport> {
    g.check_vertex(source)?;
    let (solved_graph, arc_origin) = restrict_to_reachable(g, source);
    match reweight(&solved_graph, cfg)? {
        Reweighted::NegativeCycle(cycle) => {
            let cycle = NegativeCycle {
                arcs: cycle.arcs.iter().map(|&id| arc_origin[id]).collect(),
            };
            Ok(SolveReport {
                outcome: SolveOutcome::NegativeCycle(checked_certificate(g, cycle)?),
                artifact: None,
                solved_graph,
                arc_origin,
                counters: Counters::default(),
            })
        }
        Reweighted::Artifact(artifact) => {
            let mut counters = artifact.counters;
            let mut labels = artifact.distances_from(source, cfg.heap, &mut counters)?;
            for p in labels.parent.iter_mut().flatten() {
                *p = arc_origin[*p];
            }
            if !cfg.record_counters {
                counters = Counters::default();
            }
            Ok(SolveReport {
                outcome: SolveOutcome::ShortestPaths(labels),
                artifact: Some(artifact),
                solved_graph,
                arc_origin,
                counters,
            })
        }
    }
}

pub fn verify_certificate(g: &Graph, cert: &NegativeCycle) -> bool {
    cert.is_valid(g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiffVerdict {
    Pass,
    Mismatch(String),
}

impl DiffVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, DiffVerdict::Pass)
    }
}

/// Compares `solve_sssp` with Bellman-Ford: verdict kind, exact distances,
/// tree validity, certificate validity. Solver errors count as mismatches.
pub fn differential_check(g: &Graph, source: VertexId, cfg: &SolveConfig) -> Result<DiffVerdict> {
    let oracle = bellman_ford(g, source)?;
    let ours = match solve_sssp(g, source, cfg) {
        Ok(o) => o,
        Err(e) => return Ok(DiffVerdict::Mismatch(format!("solver failed: {e}"))),
    };
    let verdict = match (&ours, &oracle) {
        (SolveOutcome::ShortestPaths(a), SolveOutcome::ShortestPaths(b)) => {
            if a.dist != b.dist {
                let v = (0..g.n()).find(|&v| a.dist[v] != b.dist[v]).unwrap();
                DiffVerdict::Mismatch(format!(
                    "distance of vertex {v}: solver {:?}, oracle {:?}",
                    a.dist[v], b.dist[v]
                ))
            } else if let Err(e) = a.validate_tree(g, source) {
                DiffVerdict::Mismatch(format!("solver tree invalid: {e}"))
            } else if let Err(e) = b.validate_tree(g, source) {
                DiffVerdict::Mismatch(format!("oracle tree invalid: {e}"))
            } else {
                DiffVerdict::Pass
            }
        }
        (SolveOutcome::NegativeCycle(a), SolveOutcome::NegativeCycle(b)) => {
            if !verify_certificate(g, a) {
                DiffVerdict::Mismatch("solver certificate invalid".into())
            } else if !verify_certificate(g, b) {
                DiffVerdict::Mismatch("oracle certificate invalid".into())
            } else {
                DiffVerdict::Pass
            }
        }
        (SolveOutcome::NegativeCycle(_), SolveOutcome::ShortestPaths(_)) => {
            DiffVerdict::Mismatch("solver reports a negative cycle the oracle does not see".into())
        }
        (SolveOutcome::ShortestPaths(_), SolveOutcome::NegativeCycle(_)) => {
            DiffVerdict::Mismatch("solver missed a negative cycle".into())
        }
    };
    Ok(verdict)
}

/// Writes a mismatching instance into `dir` as a DIMACS file carrying the
/// source and the mismatch description. Returns the written path.
pub fn persist_instance(dir: &Path, name: &str, g: &Graph, source: VertexId, note: &str) -> std::io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("{name}.gr"));
    let mut text = String::new();
    for line in note.lines() {
        text.push_str("c ");
        text.push_str(line);
        text.push('\n');
    }
    text.push_str(&dimacs::write_dimacs_with_source(g, Some(source)));
    fs::write(&path, text)?;
    Ok(path)
}
