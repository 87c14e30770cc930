//! Bellman-Ford-Moore, Dijkstra, topological sorting and DAG shortest paths.

use std::collections::VecDeque;

use crate::counters::Counters;
use crate::error::{Error, Result};
use crate::graph::{
    ArcId, Digraph, DistanceLabels, Graph, NegativeCycle, SolveOutcome, VertexId, Weight,
};
use crate::pqueue::{AddressableHeap, HeapKind, PairingHeap, QuaternaryHeap};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BellmanFordMode {
    /// Stop after the first round that relaxes nothing.
    #[default]
    EarlyExit,
    /// Always run all `n - 1` rounds plus the detection round.
    Strict,
}

#[derive(Clone, Debug)]
pub struct BellmanFordRun {
    pub outcome: SolveOutcome,
    pub rounds: usize,
    pub counters: Counters,
}

pub fn bellman_ford(g: &Graph, source: VertexId) -> Result<SolveOutcome> {
    Ok(bellman_ford_with(g, source, BellmanFordMode::EarlyExit)?.outcome)
}

pub fn bellman_ford_with(g: &Graph, source: VertexId, mode: BellmanFordMode) -> Result<BellmanFordRun> {
    g.check_vertex(source)?;
    let mut labels = DistanceLabels::unreached(g.n());
    labels.dist[source] = Some(0);
    // n - 1 rounds settle every shortest path; one more detects a cycle
    bellman_ford_core(g, labels, g.n(), mode)
}

/// Looks for any negative cycle in `g`, reachable or not, by running
/// Bellman-Ford from a virtual source joined to every vertex by a zero arc.
pub fn find_negative_cycle(g: &Graph) -> Option<NegativeCycle> {
    let labels = DistanceLabels {
        dist: vec![Some(0); g.n()],
        parent: vec![None; g.n()],
    };
    // the virtual source adds one vertex, hence one extra round
    let run = bellman_ford_core(g, labels, g.n() + 1, BellmanFordMode::EarlyExit)
        .expect("cycle extraction from parent pointers");
    match run.outcome {
        SolveOutcome::NegativeCycle(c) => Some(c),
        SolveOutcome::ShortestPaths(_) => None,
    }
}

fn bellman_ford_core(
    g: &Graph,
    mut labels: DistanceLabels,
    rounds: usize,
    mode: BellmanFordMode,
) -> Result<BellmanFordRun> {
    let mut counters = Counters::default();
    let mut done = 0;
    for round in 1..=rounds {
        done = round;
        let mut last_changed = None;
        for (id, a) in g.arcs().iter().enumerate() {
            counters.relaxations += 1;
            let Some(du) = labels.dist[a.source] else {
                continue;
            };
            let cand = du + a.weight;
            if labels.dist[a.target].is_none_or(|dv| cand < dv) {
                labels.dist[a.target] = Some(cand);
                labels.parent[a.target] = Some(id);
                counters.improvements += 1;
                last_changed = Some(a.target);
            }
        }
        match last_changed {
            None if mode == BellmanFordMode::EarlyExit || round == rounds => break,
            None => {}
            Some(v) if round == rounds => {
                let cycle = cycle_from_parents(g, &labels.parent, v)?;
                return Ok(BellmanFordRun {
                    outcome: SolveOutcome::NegativeCycle(cycle),
                    rounds: done,
                    counters,
                });
            }
            Some(_) => {}
        }
    }
    Ok(BellmanFordRun {
        outcome: SolveOutcome::ShortestPaths(labels),
        rounds: done,
        counters,
    })
}

/// Walks `n` parent arcs back from a vertex relaxed in the detection round,
/// which lands on a parent cycle, then collects that cycle.
fn cycle_from_parents(g: &Graph, parent: &[Option<ArcId>], start: VertexId) -> Result<NegativeCycle> {
    let step = |v: VertexId| -> Result<VertexId> {
        parent[v]
            .map(|id| g.arc(id).source)
            .ok_or_else(|| Error::Internal(format!("parent walk hit root {v}")))
    };
    let mut v = start;
    for _ in 0..g.n() {
        v = step(v)?;
    }
    let anchor = v;
    let mut arcs = Vec::new();
    loop {
        let id = parent[v].expect("checked by step");
        arcs.push(id);
        v = g.arc(id).source;
        if v == anchor {
            break;
        }
    }
    arcs.reverse();
    Ok(NegativeCycle { arcs })
}

/// Dijkstra from `source`; every arc weight must be nonnegative.
pub fn dijkstra(g: &Graph, source: VertexId) -> Result<DistanceLabels> {
    dijkstra_with(g, source, HeapKind::default(), &mut Counters::default())
}

pub fn dijkstra_with(
    g: &Graph,
    source: VertexId,
    heap: HeapKind,
    counters: &mut Counters,
) -> Result<DistanceLabels> {
    match heap {
        HeapKind::Quaternary => dijkstra_generic::<QuaternaryHeap>(g, source, counters, |_, _| {}),
        HeapKind::Pairing => dijkstra_generic::<PairingHeap>(g, source, counters, |_, _| {}),
    }
}

/// Dijkstra with a callback observing every extraction `(vertex, key)`.
pub fn dijkstra_generic<H: AddressableHeap>(
    g: &Graph,
    source: VertexId,
    counters: &mut Counters,
    mut on_extract: impl FnMut(VertexId, Weight),
) -> Result<DistanceLabels> {
    g.check_vertex(source)?;
    if let Some(a) = g.arcs().iter().find(|a| a.weight < 0) {
        return Err(Error::ContractViolation(format!(
            "dijkstra on negative arc ({}, {}, {})",
            a.source, a.target, a.weight
        )));
    }
    let mut labels = DistanceLabels::unreached(g.n());
    let mut settled = vec![false; g.n()];
    let mut heap = H::with_capacity(g.n());
    labels.dist[source] = Some(0);
    heap.push(source, 0)?;
    while !heap.is_empty() {
        let (u, du) = heap.extract_min()?;
        counters.extract_mins += 1;
        settled[u] = true;
        on_extract(u, du);
        for &id in g.out_arcs(u) {
            let a = g.arc(id);
            counters.relaxations += 1;
            let cand = du + a.weight;
            match labels.dist[a.target] {
                Some(dv) if dv <= cand => {}
                Some(_) => {
                    debug_assert!(!settled[a.target]);
                    labels.dist[a.target] = Some(cand);
                    labels.parent[a.target] = Some(id);
                    heap.decrease_key(a.target, cand)?;
                    counters.improvements += 1;
                }
                None => {
                    labels.dist[a.target] = Some(cand);
                    labels.parent[a.target] = Some(id);
                    heap.push(a.target, cand)?;
                    counters.improvements += 1;
                }
            }
        }
    }
    Ok(labels)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopoOrder {
    Order(Vec<VertexId>),
    /// Vertices of a directed cycle, in arc order (last one closes to first).
    Cycle(Vec<VertexId>),
}

/// Kahn's algorithm. On failure a cycle is recovered by walking backwards
/// through vertices that still have unprocessed predecessors.
pub fn topological_sort<G: Digraph>(g: &G) -> TopoOrder {
    let n = g.vertex_count();
    let mut indegree = vec![0usize; n];
    for u in 0..n {
        for &id in g.out_arcs(u) {
            indegree[g.arc(id).target] += 1;
        }
    }
    let mut queue: VecDeque<VertexId> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &id in g.out_arcs(u) {
            let v = g.arc(id).target;
            indegree[v] -= 1;
            if indegree[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    if order.len() == n {
        return TopoOrder::Order(order);
    }

    // Every leftover vertex keeps a leftover predecessor.
    let mut pred = vec![usize::MAX; n];
    for u in (0..n).filter(|&u| indegree[u] > 0) {
        for &id in g.out_arcs(u) {
            let v = g.arc(id).target;
            if indegree[v] > 0 {
                pred[v] = u;
            }
        }
    }
    let mut seen = vec![false; n];
    let mut v = (0..n).find(|&v| indegree[v] > 0).expect("leftover vertex");
    while !seen[v] {
        seen[v] = true;
        v = pred[v];
    }
    let mut cycle = vec![v];
    let mut u = pred[v];
    while u != v {
        cycle.push(u);
        u = pred[u];
    }
    cycle.reverse();
    TopoOrder::Cycle(cycle)
}

/// Shortest paths over an acyclic graph from a set of sources with initial
/// keys, in one pass over a topological order. Fails with `Error::Cyclic`.
pub fn acyclic_shortest_paths<G: Digraph>(
    g: &G,
    sources: &[(VertexId, Weight)],
) -> Result<DistanceLabels> {
    let n = g.vertex_count();
    let order = match topological_sort(g) {
        TopoOrder::Order(o) => o,
        TopoOrder::Cycle(witness) => return Err(Error::Cyclic { witness }),
    };
    let mut labels = DistanceLabels::unreached(n);
    for &(v, key) in sources {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if labels.dist[v].is_none_or(|d| key < d) {
            labels.dist[v] = Some(key);
        }
    }
    for u in order {
        let Some(du) = labels.dist[u] else { continue };
        for &id in g.out_arcs(u) {
            let a = g.arc(id);
            let cand = du + a.weight;
            if labels.dist[a.target].is_none_or(|dv| cand < dv) {
                labels.dist[a.target] = Some(cand);
                labels.parent[a.target] = Some(id);
            }
        }
    }
    Ok(labels)
}
