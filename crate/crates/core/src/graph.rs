//! Directed multigraph with signed integer weights, plus the potential and
//! label vocabulary shared by every solver in the crate.

use std::ops::{Deref, DerefMut};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type ArcId = usize;
pub type Weight = i64;

/// Largest accepted absolute input weight.
pub const MAX_ABS_WEIGHT: Weight = 1 << 40;
/// Largest accepted vertex count.
pub const MAX_VERTICES: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub source: VertexId,
    pub target: VertexId,
    pub weight: Weight,
}

impl Arc {
    pub fn new(source: VertexId, target: VertexId, weight: Weight) -> Self {
        Arc {
            source,
            target,
            weight,
        }
    }
}

/// Read-only adjacency view. Arc ids returned by `out_arcs` index into
/// `arc`, so subgraph views can share the ids of their parent graph.
pub trait Digraph {
    fn vertex_count(&self) -> usize;
    fn out_arcs(&self, v: VertexId) -> &[ArcId];
    fn arc(&self, id: ArcId) -> Arc;
}

/// Immutable directed multigraph. Parallel arcs and self-loops are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    arcs: Vec<Arc>,
    offsets: Vec<usize>,
    adjacency: Vec<ArcId>,
}

impl Graph {
    /// Builds a graph, enforcing vertex ranges and the magnitude contract
    /// (`n <= 2^20`, `|w| <= 2^40`).
    pub fn new(n: usize, arcs: Vec<Arc>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVertexSet);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n });
        }
        for a in &arcs {
            for v in [a.source, a.target] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a.weight.unsigned_abs() > MAX_ABS_WEIGHT as u64 {
                return Err(Error::WeightOutOfRange { weight: a.weight });
            }
        }
        Ok(Self::build_unchecked(n, arcs))
    }

    pub fn from_triples(n: usize, triples: &[(VertexId, VertexId, Weight)]) -> Result<Self> {
        Self::new(
            n,
            triples
                .iter()
                .map(|&(u, v, w)| Arc::new(u, v, w))
                .collect(),
        )
    }

    pub(crate) fn build_unchecked(n: usize, arcs: Vec<Arc>) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for a in &arcs {
            offsets[a.source + 1] += 1;
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        let mut fill = offsets.clone();
        let mut adjacency = vec![0; arcs.len()];
        for (id, a) in arcs.iter().enumerate() {
            adjacency[fill[a.source]] = id;
            fill[a.source] += 1;
        }
        Graph {
            n,
            arcs,
            offsets,
            adjacency,
        }
    }

    /// Same topology and arc ids, new weights. Weights are not range checked:
    /// reweighted graphs may legitimately leave the input magnitude bound.
    pub(crate) fn with_weights(&self, weights: impl IntoIterator<Item = Weight>) -> Self {
        let mut g = self.clone();
        let mut count = 0;
        for (a, w) in g.arcs.iter_mut().zip(weights) {
            a.weight = w;
            count += 1;
        }
        debug_assert_eq!(count, g.arcs.len());
        g
    }

    pub(crate) fn set_weight(&mut self, arc: ArcId, weight: Weight) {
        self.arcs[arc].weight = weight;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn weight(&self, arc: ArcId) -> Weight {
        self.arcs[arc].weight
    }

    pub fn negative_arc_count(&self) -> usize {
        self.arcs.iter().filter(|a| a.weight < 0).count()
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }
}

impl Digraph for Graph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn out_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    fn arc(&self, id: ArcId) -> Arc {
        self.arcs[id]
    }
}

/// Per-vertex potential `d`. Reduced weight of `(u,v)` is `w + d[u] - d[v]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Potentials(Vec<Weight>);

impl Potentials {
    pub fn zeros(n: usize) -> Self {
        Potentials(vec![0; n])
    }

    pub fn into_inner(self) -> Vec<Weight> {
        self.0
    }

    pub fn reset(&mut self) {
        self.0.iter_mut().for_each(|x| *x = 0);
    }
}

impl From<Vec<Weight>> for Potentials {
    fn from(v: Vec<Weight>) -> Self {
        Potentials(v)
    }
}

impl Deref for Potentials {
    type Target = [Weight];
    fn deref(&self) -> &[Weight] {
        &self.0
    }
}

impl DerefMut for Potentials {
    fn deref_mut(&mut self) -> &mut [Weight] {
        &mut self.0
    }
}

/// Tentative distances (`None` is infinity) and parent arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceLabels {
    pub dist: Vec<Option<Weight>>,
    pub parent: Vec<Option<ArcId>>,
}

impl DistanceLabels {
    pub fn unreached(n: usize) -> Self {
        DistanceLabels {
            dist: vec![None; n],
            parent: vec![None; n],
        }
    }

    pub fn distance(&self, v: VertexId) -> Option<Weight> {
        self.dist[v]
    }

    /// Checks that `labels` form a shortest-path tree rooted at `source`
    /// under the weights of `g`: every parent arc is tight, parents only
    /// point at reached vertices, the parent graph is acyclic, and no arc
    /// out of a reached vertex can be relaxed.
    pub fn validate_tree(&self, g: &Graph, source: VertexId) -> std::result::Result<(), String> {
        let n = g.n();
        if self.dist.len() != n || self.parent.len() != n {
            return Err("label vectors have the wrong length".into());
        }
        if self.dist[source] != Some(0) || self.parent[source].is_some() {
            return Err(format!("source {source} must have distance 0 and no parent"));
        }
        for v in 0..n {
            match (self.dist[v], self.parent[v]) {
                (None, Some(_)) => return Err(format!("unreached vertex {v} has a parent")),
                (Some(_), None) if v != source => {
                    return Err(format!("reached vertex {v} has no parent"))
                }
                (Some(dv), Some(pa)) => {
                    let a = g.arc(pa);
                    if a.target != v {
                        return Err(format!("parent arc {pa} of {v} does not end at {v}"));
                    }
                    match self.dist[a.source] {
                        Some(du) if du.checked_add(a.weight) == Some(dv) => {}
                        _ => return Err(format!("parent arc {pa} of {v} is not tight")),
                    }
                }
                _ => {}
            }
        }
        for a in g.arcs() {
            if let Some(du) = self.dist[a.source] {
                match self.dist[a.target] {
                    Some(dv) if dv <= du + a.weight => {}
                    _ => {
                        return Err(format!(
                            "arc ({}, {}) violates the triangle inequality",
                            a.source, a.target
                        ))
                    }
                }
            }
        }
        // Parent chains must reach the source within n steps.
        let mut state = vec![0u8; n]; // 0 unseen, 1 on stack, 2 done
        state[source] = 2;
        for start in 0..n {
            if self.dist[start].is_none() || state[start] == 2 {
                continue;
            }
            let mut path = Vec::new();
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                path.push(v);
                v = g.arc(self.parent[v].expect("reached vertex has parent")).source;
            }
            if state[v] == 1 {
                return Err(format!("parent pointers contain a cycle through {v}"));
            }
            for p in path {
                state[p] = 2;
            }
        }
        Ok(())
    }
}

/// Closed arc walk with negative total weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeCycle {
    pub arcs: Vec<ArcId>,
}

impl NegativeCycle {
    /// Total weight under `g`, or `None` when an arc id is invalid.
    pub fn total_weight(&self, g: &Graph) -> Option<i128> {
        self.arcs
            .iter()
            .map(|&id| (id < g.m()).then(|| g.weight(id) as i128))
            .sum()
    }

    /// True iff the arcs chain head to tail into a closed walk whose total
    /// weight is strictly negative.
    pub fn is_valid(&self, g: &Graph) -> bool {
        if self.arcs.is_empty() || self.arcs.iter().any(|&id| id >= g.m()) {
            return false;
        }
        let chained = self
            .arcs
            .iter()
            .zip(self.arcs.iter().cycle().skip(1))
            .all(|(&a, &b)| g.arc(a).target == g.arc(b).source);
        chained && self.total_weight(g).is_some_and(|w| w < 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    ShortestPaths(DistanceLabels),
    NegativeCycle(NegativeCycle),
}

impl SolveOutcome {
    pub fn labels(&self) -> Option<&DistanceLabels> {
        match self {
            SolveOutcome::ShortestPaths(l) => Some(l),
            SolveOutcome::NegativeCycle(_) => None,
        }
    }

    pub fn cycle(&self) -> Option<&NegativeCycle> {
        match self {
            SolveOutcome::ShortestPaths(_) => None,
            SolveOutcome::NegativeCycle(c) => Some(c),
        }
    }
}

/// `w(u,v) + d[u] - d[v]`, overflow checked.
pub fn reduced_weight(g: &Graph, d: &[Weight], arc: ArcId) -> Result<Weight> {
    if arc >= g.m() {
        return Err(Error::ArcOutOfRange { arc, m: g.m() });
    }
    if d.len() != g.n() {
        return Err(Error::ContractViolation(format!(
            "potential vector has {} entries, graph has {} vertices",
            d.len(),
            g.n()
        )));
    }
    let a = g.arc(arc);
    a.weight
        .checked_add(d[a.source])
        .and_then(|x| x.checked_sub(d[a.target]))
        .ok_or(Error::Overflow {
            context: "reduced weight",
        })
}

pub fn has_negative_arc(g: &Graph) -> bool {
    g.arcs().iter().any(|a| a.weight < 0)
}

/// Sum of reduced weights along a chained arc sequence.
pub fn path_reduced_weight(g: &Graph, d: &[Weight], path: &[ArcId]) -> Result<Weight> {
    let mut total: Weight = 0;
    for (i, &id) in path.iter().enumerate() {
        let rw = reduced_weight(g, d, id)?;
        if i > 0 && g.arc(path[i - 1]).target != g.arc(id).source {
            return Err(Error::ContractViolation(format!(
                "arcs {} and {} do not chain",
                path[i - 1],
                id
            )));
        }
        total = total.checked_add(rw).ok_or(Error::Overflow {
            context: "path reduced weight",
        })?;
    }
    Ok(total)
}
