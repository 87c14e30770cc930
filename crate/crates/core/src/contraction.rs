//! Admissible subgraphs, strongly connected components and zero-cycle
//! contraction.

use std::collections::VecDeque;

use crate::graph::{Arc, ArcId, Digraph, Graph, NegativeCycle, Potentials, VertexId, Weight};

/// View of a subset of a graph's arcs. Arc ids are those of the parent graph.
#[derive(Clone, Debug)]
pub struct Subgraph<'g> {
    graph: &'g Graph,
    offsets: Vec<usize>,
    arc_ids: Vec<ArcId>,
}

/// Arcs whose reduced weight under the current potentials is `<= 0`.
pub type AdmissibleSubgraph<'g> = Subgraph<'g>;

impl<'g> Subgraph<'g> {
    pub fn filter(graph: &'g Graph, mut keep: impl FnMut(ArcId, &Arc) -> bool) -> Self {
        let n = graph.n();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut arc_ids = Vec::new();
        offsets.push(0);
        for u in 0..n {
            for &id in graph.out_arcs(u) {
                if keep(id, &graph.arcs()[id]) {
                    arc_ids.push(id);
                }
            }
            offsets.push(arc_ids.len());
        }
        Subgraph {
            graph,
            offsets,
            arc_ids,
        }
    }

    pub fn parent(&self) -> &'g Graph {
        self.graph
    }

    pub fn arc_ids(&self) -> &[ArcId] {
        &self.arc_ids
    }

    pub fn len(&self) -> usize {
        self.arc_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arc_ids.is_empty()
    }
}

impl Digraph for Subgraph<'_> {
    fn vertex_count(&self) -> usize {
        self.graph.n()
    }

    fn out_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.arc_ids[self.offsets[v]..self.offsets[v + 1]]
    }

    fn arc(&self, id: ArcId) -> Arc {
        self.graph.arc(id)
    }
}

pub fn admissible_subgraph<'g>(g: &'g Graph, d: &[Weight]) -> AdmissibleSubgraph<'g> {
    Subgraph::filter(g, |_, a| a.weight + d[a.source] - d[a.target] <= 0)
}

/// Component label per vertex. Ids follow Tarjan's completion order, so
/// every arc between two components goes from a higher id to a lower one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub component: Vec<usize>,
    pub count: usize,
}

impl Components {
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count];
        for &c in &self.component {
            sizes[c] += 1;
        }
        sizes
    }

    /// Members of each component, ascending by vertex id.
    pub fn members(&self) -> Vec<Vec<VertexId>> {
        let mut members = vec![Vec::new(); self.count];
        for (v, &c) in self.component.iter().enumerate() {
            members[c].push(v);
        }
        members
    }
}

/// Iterative Tarjan; safe on long paths.
pub fn strongly_connected_components<G: Digraph>(g: &G) -> Components {
    const UNVISITED: usize = usize::MAX;
    let n = g.vertex_count();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut component = vec![UNVISITED; n];
    let mut count = 0;
    let mut next_index = 0;
    let mut calls: Vec<(VertexId, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        calls.push((root, 0));

        while let Some(&mut (v, ref mut edge)) = calls.last_mut() {
            let out = g.out_arcs(v);
            if *edge < out.len() {
                let w = g.arc(out[*edge]).target;
                *edge += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(p, _)) = calls.last() {
                low[p] = low[p].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    component[w] = count;
                    if w == v {
                        break;
                    }
                }
                count += 1;
            }
        }
    }
    Components { component, count }
}

/// Surjection from vertices onto super-vertices, with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionMap {
    to_super: Vec<VertexId>,
    members: Vec<Vec<VertexId>>,
}

impl ContractionMap {
    pub fn identity(n: usize) -> Self {
        ContractionMap {
            to_super: (0..n).collect(),
            members: (0..n).map(|v| vec![v]).collect(),
        }
    }

    /// Builds the map from a total assignment onto `0..count`. Panics when
    /// the assignment is not surjective.
    pub fn from_assignment(to_super: Vec<VertexId>, count: usize) -> Self {
        let mut members = vec![Vec::new(); count];
        for (v, &s) in to_super.iter().enumerate() {
            members[s].push(v);
        }
        assert!(
            members.iter().all(|m| !m.is_empty()),
            "contraction map must be surjective"
        );
        ContractionMap { to_super, members }
    }

    pub fn to_super(&self, v: VertexId) -> VertexId {
        self.to_super[v]
    }

    pub fn members(&self, s: VertexId) -> &[VertexId] {
        &self.members[s]
    }

    pub fn original_count(&self) -> usize {
        self.to_super.len()
    }

    pub fn super_count(&self) -> usize {
        self.members.len()
    }

    pub fn is_identity(&self) -> bool {
        self.to_super.iter().enumerate().all(|(v, &s)| v == s)
            && self.super_count() == self.original_count()
    }

    /// `self` followed by `next` (which contracts the super-vertices of `self`).
    pub fn then(&self, next: &ContractionMap) -> ContractionMap {
        assert_eq!(self.super_count(), next.original_count());
        let to_super = self.to_super.iter().map(|&s| next.to_super[s]).collect();
        ContractionMap::from_assignment(to_super, next.super_count())
    }
}

/// Result of contracting zero cycles.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: Graph,
    pub map: ContractionMap,
    /// Original arc id of every contracted arc.
    pub arc_origin: Vec<ArcId>,
    /// Admissible arcs dropped because both ends share a component.
    pub internal_arcs: Vec<ArcId>,
}

#[derive(Clone, Debug)]
pub enum ContractOutcome {
    Contracted(Contraction),
    NegativeCycle(NegativeCycle),
}

/// Contracts every strongly connected component of the admissible subgraph
/// under `d`. An admissible arc with negative reduced weight inside a
/// component closes a negative cycle, which is returned instead.
///
/// Arc weights of the contracted graph are reduced weights under `d`.
/// Super-vertices are numbered by their smallest member, so contracting a
/// graph without zero cycles yields the identity map.
pub fn contract_zero_cycles(g: &Graph, d: &[Weight]) -> ContractOutcome {
    let reduced = |a: &Arc| a.weight + d[a.source] - d[a.target];
    let sub = admissible_subgraph(g, d);
    let comps = strongly_connected_components(&sub);

    for &id in sub.arc_ids() {
        let a = g.arc(id);
        if reduced(&a) < 0 && comps.component[a.source] == comps.component[a.target] {
            let mut arcs = vec![id];
            arcs.extend(path_within(&sub, &comps.component, a.target, a.source));
            return ContractOutcome::NegativeCycle(NegativeCycle { arcs });
        }
    }

    let mut renumber = vec![usize::MAX; comps.count];
    let mut to_super = Vec::with_capacity(g.n());
    let mut count = 0;
    for v in 0..g.n() {
        let c = comps.component[v];
        if renumber[c] == usize::MAX {
            renumber[c] = count;
            count += 1;
        }
        to_super.push(renumber[c]);
    }
    let map = ContractionMap::from_assignment(to_super, count);

    let mut arcs = Vec::with_capacity(g.m());
    let mut arc_origin = Vec::with_capacity(g.m());
    let mut internal_arcs = Vec::new();
    for (id, a) in g.arcs().iter().enumerate() {
        let (su, sv) = (map.to_super(a.source), map.to_super(a.target));
        let w = reduced(a);
        if su == sv && w <= 0 {
            debug_assert_eq!(w, 0);
            internal_arcs.push(id);
            continue;
        }
        arcs.push(Arc::new(su, sv, w));
        arc_origin.push(id);
    }
    ContractOutcome::Contracted(Contraction {
        graph: Graph::build_unchecked(count, arcs),
        map,
        arc_origin,
        internal_arcs,
    })
}

/// BFS path from `from` to `to` using arcs of `g` whose endpoints both lie
/// in the component of `from`. Empty when `from == to`.
pub(crate) fn path_within<G: Digraph>(
    g: &G,
    component: &[usize],
    from: VertexId,
    to: VertexId,
) -> Vec<ArcId> {
    let n = g.vertex_count();
    let target_comp = component[from];
    let mut via = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &id in g.out_arcs(u) {
            let v = g.arc(id).target;
            if !seen[v] && component[v] == target_comp {
                seen[v] = true;
                via[v] = id;
                queue.push_back(v);
            }
        }
    }
    assert!(seen[to], "vertices share a strongly connected component");
    let mut path = Vec::new();
    let mut v = to;
    while v != from {
        let id = via[v];
        path.push(id);
        v = g.arc(id).source;
    }
    path.reverse();
    path
}

impl Contraction {
    /// Rewrites a closed walk of the contracted graph as a closed walk of
    /// `original`, splicing internal arcs wherever consecutive arcs meet at
    /// different members of one super-vertex.
    pub fn lift_cycle(&self, original: &Graph, cycle: &NegativeCycle) -> NegativeCycle {
        let internal = Subgraph::filter(original, {
            let mut is_internal = vec![false; original.m()];
            for &id in &self.internal_arcs {
                is_internal[id] = true;
            }
            move |id, _| is_internal[id]
        });
        let component: Vec<usize> = (0..original.n()).map(|v| self.map.to_super(v)).collect();
        let lifted: Vec<ArcId> = cycle.arcs.iter().map(|&id| self.arc_origin[id]).collect();
        let mut arcs = Vec::with_capacity(lifted.len());
        for (i, &id) in lifted.iter().enumerate() {
            arcs.push(id);
            let next = lifted[(i + 1) % lifted.len()];
            let (at, want) = (original.arc(id).target, original.arc(next).source);
            if at != want {
                arcs.extend(path_within(&internal, &component, at, want));
            }
        }
        NegativeCycle { arcs }
    }
}

/// Gives every original vertex the potential of its super-vertex.
pub fn expand_potentials(map: &ContractionMap, d_super: &[Weight]) -> Potentials {
    (0..map.original_count())
        .map(|v| d_super[map.to_super(v)])
        .collect::<Vec<_>>()
        .into()
}
