//! Reweighting engine: alternate shortest paths on the admissible subgraph
//! (expand) with a Dijkstra pass over nonnegative arcs seeded by the
//! resulting potentials (connect), then fold the potentials into the arc
//! weights (adjust). Repeats until no arc is negative.
//!
//! Within one iteration potentials start at zero and only decrease, and a
//! label `D[v] + d[v]` is always the length of some walk ending at `v` in the
//! input graph, so every relaxation here is a valid relaxation of the
//! original instance.

use log::{debug, trace, warn};

use crate::classic::{find_negative_cycle, topological_sort, TopoOrder};
use crate::contraction::{admissible_subgraph, path_within, strongly_connected_components};
use crate::counters::Counters;
use crate::error::{Error, Result};
use crate::graph::{has_negative_arc, ArcId, Digraph, Graph, NegativeCycle, Potentials, VertexId, Weight};
use crate::pqueue::{AddressableHeap, HeapKind, PairingHeap, QuaternaryHeap};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Variant {
    /// One expand per iteration.
    #[default]
    Basic,
    /// `expansion_repeat_count(n, m)` expands per iteration.
    Improved,
}

/// `ceil(n * log2(n) / m)`, at least 1.
pub fn expansion_repeat_count(n: usize, m: usize) -> usize {
    if n <= 1 || m == 0 {
        return 1;
    }
    let work = n as f64 * (n as f64).log2();
    ((work / m as f64).ceil() as usize).max(1)
}

/// Smallest `k` with `c * k^2 >= 2n`, i.e. `ceil(sqrt(2n / c))`.
pub fn iteration_bound(n: usize, c: usize) -> usize {
    let target = 2 * n as u128;
    let c = c.max(1) as u128;
    let mut k = ((2.0 * n as f64 / c as f64).sqrt() as u128).saturating_sub(1);
    while c * k * k < target {
        k += 1;
    }
    k as usize
}

/// Mutable reweighting state over one graph.
#[derive(Clone, Debug)]
pub struct ReweightState {
    graph: Graph,
    d: Potentials,
    cumulative: Vec<Weight>,
    iterations: usize,
    counters: Counters,
    heap: HeapKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub variant: Variant,
    /// Resolve zero cycles that show up in the admissible subgraph during
    /// expand. When off, a cyclic admissible subgraph skips that expand.
    pub zero_cycles: bool,
    /// Fail instead of continuing when the iteration bound is exceeded on
    /// an instance without negative cycles.
    pub strict_bound: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            variant: Variant::Basic,
            zero_cycles: true,
            strict_bound: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunSummary {
    pub iterations: usize,
    /// Expands per iteration.
    pub repeats: usize,
    /// `ceil(sqrt(2n / repeats))`.
    pub bound: usize,
    /// Negative arcs survived past `bound + 1` iterations without a
    /// negative cycle.
    pub bound_exceeded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunOutcome {
    Converged(RunSummary),
    /// Certificate in terms of the state's arc ids.
    NegativeCycle(NegativeCycle),
}

impl ReweightState {
    pub fn new(graph: Graph, heap: HeapKind) -> Self {
        let n = graph.n();
        ReweightState {
            graph,
            d: Potentials::zeros(n),
            cumulative: vec![0; n],
            iterations: 0,
            counters: Counters::default(),
            heap,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn potentials(&self) -> &Potentials {
        &self.d
    }

    /// Sum of all potentials folded into the weights so far.
    pub fn cumulative(&self) -> &[Weight] {
        &self.cumulative
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn counters(&self) -> Counters {
        self.counters
    }

    fn admissible_arc_count(&mut self) {
        self.counters.arc_scans += self.graph.m() as u64;
    }

    /// Shortest paths over the admissible subgraph under the current
    /// potentials, relaxing only admissible arcs in topological order.
    /// Fails with `Error::Cyclic` (and leaves `d` untouched) when the
    /// admissible subgraph has a cycle.
    pub fn expand(&mut self) -> Result<()> {
        self.admissible_arc_count();
        let sub = admissible_subgraph(&self.graph, &self.d);
        let order = match topological_sort(&sub) {
            TopoOrder::Order(o) => o,
            TopoOrder::Cycle(witness) => return Err(Error::Cyclic { witness }),
        };
        let d = &mut self.d;
        for u in order {
            for &id in sub.out_arcs(u) {
                let a = self.graph.arc(id);
                self.counters.relaxations += 1;
                let cand = d[u] + a.weight;
                if cand < d[a.target] {
                    d[a.target] = cand;
                    self.counters.improvements += 1;
                }
            }
        }
        Ok(())
    }

    /// Expand that tolerates cycles in the admissible subgraph. Components
    /// whose arcs all have zero reduced weight are processed as one unit:
    /// when any member's label drops by `k`, every member drops by the
    /// largest such `k`. A component containing an arc of negative reduced
    /// weight is a negative cycle and is returned.
    pub fn expand_with_zero_cycles(&mut self) -> Result<Option<NegativeCycle>> {
        self.admissible_arc_count();
        let sub = admissible_subgraph(&self.graph, &self.d);
        let comps = strongly_connected_components(&sub);
        for &id in sub.arc_ids() {
            let a = self.graph.arc(id);
            if comps.component[a.source] == comps.component[a.target]
                && a.weight + self.d[a.source] - self.d[a.target] < 0
            {
                let mut arcs = vec![id];
                arcs.extend(path_within(&sub, &comps.component, a.target, a.source));
                return Ok(Some(NegativeCycle { arcs }));
            }
        }
        let members = comps.members();
        let entry = self.d.clone();
        let d = &mut self.d;
        // higher component ids come first topologically
        for group in members.iter().rev() {
            if group.len() > 1 {
                let drop = group.iter().map(|&v| entry[v] - d[v]).max().unwrap_or(0);
                for &v in group {
                    d[v] = entry[v] - drop;
                }
            }
            for &u in group {
                for &id in sub.out_arcs(u) {
                    let a = self.graph.arc(id);
                    self.counters.relaxations += 1;
                    let cand = d[u] + a.weight;
                    if cand < d[a.target] {
                        d[a.target] = cand;
                        self.counters.improvements += 1;
                    }
                }
            }
        }
        Ok(None)
    }

    /// Dijkstra over arcs with nonnegative current weight, starting with
    /// every vertex queued at its current potential.
    pub fn connect(&mut self) {
        self.connect_traced(|_, _| {});
    }

    /// `connect`, reporting each extraction `(vertex, key)` in order.
    pub fn connect_traced(&mut self, on_extract: impl FnMut(VertexId, Weight)) {
        match self.heap {
            HeapKind::Quaternary => self.connect_with::<QuaternaryHeap>(on_extract),
            HeapKind::Pairing => self.connect_with::<PairingHeap>(on_extract),
        }
    }

    fn connect_with<H: AddressableHeap>(&mut self, mut on_extract: impl FnMut(VertexId, Weight)) {
        let mut heap = H::build_all(&self.d);
        let d = &mut self.d;
        while !heap.is_empty() {
            let (u, du) = heap.extract_min().expect("nonempty heap");
            self.counters.extract_mins += 1;
            on_extract(u, du);
            for &id in self.graph.out_arcs(u) {
                let a = self.graph.arc(id);
                self.counters.arc_scans += 1;
                if a.weight < 0 {
                    continue;
                }
                self.counters.relaxations += 1;
                let cand = du + a.weight;
                if cand < d[a.target] {
                    // extraction keys are nondecreasing, so the target is
                    // still queued
                    d[a.target] = cand;
                    heap.decrease_key(a.target, cand)
                        .expect("relaxed vertex is queued");
                    self.counters.improvements += 1;
                }
            }
        }
    }

    /// Replaces every weight by its reduced weight, adds `d` into the
    /// cumulative potentials and zeroes `d`. Returns whether any arc is
    /// still negative.
    pub fn adjust_weights(&mut self) -> Result<bool> {
        let overflow = || Error::Overflow {
            context: "weight adjustment",
        };
        let mut negative = false;
        for id in 0..self.graph.m() {
            let a = self.graph.arc(id);
            let w = a
                .weight
                .checked_add(self.d[a.source])
                .and_then(|w| w.checked_sub(self.d[a.target]))
                .ok_or_else(overflow)?;
            negative |= w < 0;
            self.graph.set_weight(id, w);
        }
        self.counters.arc_scans += self.graph.m() as u64;
        for (total, &dv) in self.cumulative.iter_mut().zip(self.d.iter()) {
            *total = total.checked_add(dv).ok_or_else(overflow)?;
        }
        self.d.reset();
        Ok(negative)
    }

    /// One expand step under `zero_cycles` handling; returns a certificate
    /// if the admissible subgraph closes a negative cycle.
    pub fn expand_step(&mut self, zero_cycles: bool) -> Result<Option<NegativeCycle>> {
        match self.expand() {
            Ok(()) => Ok(None),
            Err(Error::Cyclic { .. }) if zero_cycles => self.expand_with_zero_cycles(),
            Err(Error::Cyclic { witness }) => {
                trace!("expand skipped: admissible cycle through {witness:?}");
                self.counters.skipped_expands += 1;
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    /// One full iteration: `repeats` expands, connect, adjust. Returns the
    /// certificate if one surfaced, else whether negative arcs remain.
    pub fn iterate(&mut self, repeats: usize, zero_cycles: bool) -> Result<IterationResult> {
        for _ in 0..repeats {
            if let Some(cycle) = self.expand_step(zero_cycles)? {
                return Ok(IterationResult::NegativeCycle(cycle));
            }
        }
        self.connect();
        let negative = self.adjust_weights()?;
        self.iterations += 1;
        Ok(IterationResult::Done { negative })
    }

    /// Runs iterations until no arc is negative. After `bound + 1`
    /// iterations a Bellman-Ford pass over the current weights decides
    /// whether a negative cycle exists; if none does, the run either fails
    /// (`strict_bound`) or continues and flags the overrun.
    pub fn run(&mut self, opts: RunOptions) -> Result<RunOutcome> {
        let n = self.graph.n();
        let repeats = match opts.variant {
            Variant::Basic => 1,
            Variant::Improved => expansion_repeat_count(n, self.graph.m()),
        };
        let bound = iteration_bound(n, repeats);
        let cap = bound + 1;
        let mut summary = RunSummary {
            iterations: 0,
            repeats,
            bound,
            bound_exceeded: false,
        };
        let mut negative = has_negative_arc(&self.graph);
        self.counters.arc_scans += self.graph.m() as u64;
        while negative {
            if self.iterations == cap {
                if let Some(cycle) = find_negative_cycle(&self.graph) {
                    debug!("iteration cap {cap} reached; negative cycle confirmed");
                    return Ok(RunOutcome::NegativeCycle(cycle));
                }
                if opts.strict_bound {
                    return Err(Error::IterationBoundExceeded {
                        iterations: self.iterations,
                        bound,
                    });
                }
                warn!("iteration bound {bound} exceeded on an instance without negative cycles (n = {n})");
                summary.bound_exceeded = true;
            }
            // every iteration relaxes each arc at least once, so n + 1
            // iterations settle any instance without negative cycles
            if self.iterations > n + cap {
                return Err(Error::Internal(format!(
                    "no convergence after {} iterations",
                    self.iterations
                )));
            }
            match self.iterate(repeats, opts.zero_cycles)? {
                IterationResult::NegativeCycle(cycle) => return Ok(RunOutcome::NegativeCycle(cycle)),
                IterationResult::Done { negative: still } => negative = still,
            }
            trace!(
                "iteration {} done, negative arcs remain: {negative}",
                self.iterations
            );
        }
        summary.iterations = self.iterations;
        Ok(RunOutcome::Converged(summary))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IterationResult {
    Done { negative: bool },
    NegativeCycle(NegativeCycle),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Snake {
    pub head: ArcId,
    /// Head plus the longest run of zero-weight arcs ending at its source.
    pub length: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SnakeReport {
    pub snakes: Vec<Snake>,
}

impl SnakeReport {
    pub fn min_length(&self) -> Option<usize> {
        self.snakes.iter().map(|s| s.length).min()
    }
}

/// One snake per negative arc, in arc id order. Requires the zero-weight
/// subgraph to be acyclic.
pub fn trace_snakes(g: &Graph) -> Result<SnakeReport> {
    let zero = crate::contraction::Subgraph::filter(g, |_, a| a.weight == 0);
    let order = match topological_sort(&zero) {
        TopoOrder::Order(o) => o,
        TopoOrder::Cycle(witness) => return Err(Error::Cyclic { witness }),
    };
    let mut tail = vec![0usize; g.n()];
    for u in order {
        for &id in zero.out_arcs(u) {
            let v = g.arc(id).target;
            tail[v] = tail[v].max(tail[u] + 1);
        }
    }
    let snakes = g
        .arcs()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.weight < 0)
        .map(|(head, a)| Snake {
            head,
            length: 1 + tail[a.source],
        })
        .collect();
    Ok(SnakeReport { snakes })
}
