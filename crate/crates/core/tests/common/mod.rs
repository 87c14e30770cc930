#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;
use snakes_sp::dimacs::{parse_dimacs, DimacsInstance};
use snakes_sp::gen::{gen_hidden_potential, gen_layered, gen_random, rng};
use snakes_sp::{ArcId, Graph, VertexId, Weight};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data")
}

pub fn golden_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(data_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".gr"))
        .collect();
    names.sort();
    names
}

pub fn load(name: &str) -> DimacsInstance {
    let bytes = std::fs::read(data_dir().join(name)).unwrap();
    parse_dimacs(&bytes).unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expect {
    Distances(Vec<Option<Weight>>),
    NegativeCycle,
    /// Compared against the oracle only.
    Oracle,
}

#[derive(Clone, Debug)]
pub struct HandCase {
    pub name: String,
    pub graph: Graph,
    pub source: VertexId,
    pub expect: Expect,
}

fn case(name: &str, n: usize, arcs: &[(usize, usize, Weight)], source: VertexId, expect: Expect) -> HandCase {
    HandCase {
        name: name.into(),
        graph: Graph::from_triples(n, arcs).unwrap(),
        source,
        expect,
    }
}

fn golden(name: &str, expect: Expect) -> HandCase {
    let inst = load(&format!("{name}.gr"));
    HandCase {
        name: name.into(),
        graph: inst.graph,
        source: inst.source.unwrap_or(0),
        expect,
    }
}

/// Small named instances with hand-derived outcomes, plus layered and
/// zero-cycle families checked against the oracle.
pub fn hand_suite() -> Vec<HandCase> {
    use Expect::*;
    let mut cases = vec![
        golden("three_vertex", Distances(vec![Some(0), Some(2), Some(-3)])),
        golden("four_arc_chain", Distances(vec![Some(0), Some(1), Some(0), Some(1), Some(0)])),
        golden("two_cycle", NegativeCycle),
        golden("zero_cycle", Distances(vec![Some(0), Some(0), Some(-3), Some(-2)])),
        golden("single_vertex", Distances(vec![Some(0)])),
        golden("snake_tail_cut", Oracle),
        golden("random_32_128_seed7", Oracle),
        case("negative_self_loop", 2, &[(0, 1, 3), (1, 1, -1)], 0, NegativeCycle),
        case(
            "unreachable_negative_cycle",
            4,
            &[(0, 1, 1), (2, 3, -1), (3, 2, 0)],
            0,
            Distances(vec![Some(0), Some(1), None, None]),
        ),
        case(
            "zero_cycle_with_negative_chord",
            3,
            &[(0, 1, 0), (1, 2, 0), (2, 0, 0), (0, 2, -1)],
            0,
            NegativeCycle,
        ),
        case(
            "mixed_zero_cycle",
            4,
            &[(0, 1, 2), (1, 2, -3), (2, 0, 1), (3, 0, -4), (3, 2, 0)],
            3,
            Distances(vec![Some(-4), Some(-2), Some(-5), Some(0)]),
        ),
        case(
            "zero_cycle_inside_negative_path",
            5,
            &[(0, 1, -2), (1, 2, 0), (2, 1, 0), (2, 3, -1), (3, 4, 5), (1, 4, 7)],
            0,
            Distances(vec![Some(0), Some(-2), Some(-2), Some(-3), Some(2)]),
        ),
        case(
            "parallel_arcs",
            3,
            &[(0, 1, 5), (0, 1, -2), (1, 2, 4), (1, 2, -1), (0, 2, -2)],
            0,
            Distances(vec![Some(0), Some(-2), Some(-3)]),
        ),
        case("all_nonnegative", 4, &[(0, 1, 1), (1, 2, 2), (0, 2, 4), (2, 3, 0)], 0, Oracle),
        case(
            "long_zero_ring",
            6,
            &[(0, 1, 0), (1, 2, 0), (2, 3, 0), (3, 4, 0), (4, 5, 0), (5, 0, 0), (2, 4, -1)],
            0,
            NegativeCycle,
        ),
        case(
            "nested_zero_cycles",
            5,
            &[(0, 1, 0), (1, 0, 0), (1, 2, 0), (2, 1, 0), (2, 3, -5), (3, 4, 2), (4, 3, -2)],
            0,
            Distances(vec![Some(0), Some(0), Some(0), Some(-5), Some(-3)]),
        ),
    ];
    for (layers, width, seed) in [(2, 1, 1), (4, 1, 2), (9, 3, 3), (12, 5, 4), (20, 8, 5), (31, 2, 6)] {
        cases.push(HandCase {
            name: format!("layered_{layers}x{width}"),
            graph: gen_layered(layers, width, seed).unwrap(),
            source: 0,
            expect: Oracle,
        });
    }
    cases
}

/// Instance `i` of the random sweep: n in [2, 64], m in [0, 8n], weights in
/// [-16, 64], negative share cycling through {0, 0.1, 0.3, 0.5}.
pub fn sweep_instance(i: u64) -> (Graph, VertexId, f64) {
    let mut r = rng(i ^ 0x5eed_0000);
    let n = r.random_range(2..=64usize);
    let m = r.random_range(0..=8 * n);
    let frac = [0.0, 0.1, 0.3, 0.5][(i % 4) as usize];
    let g = gen_random(n, m, -16, 64, frac, i).unwrap();
    let source = r.random_range(0..n);
    (g, source, frac)
}

pub const SWEEP_SIZE: u64 = 10_000;

/// Instance `i` of the cycle-free sweep: same size ranges, hidden potentials
/// over base weights that may be zero, so zero cycles are common.
pub fn feasible_instance(i: u64) -> (Graph, VertexId) {
    let mut r = rng(i ^ 0xfea5_0000);
    let n = r.random_range(2..=64usize);
    let m = r.random_range(0..=8 * n);
    let max_base = r.random_range(0..=16);
    let spread = r.random_range(0..=64);
    let g = gen_hidden_potential(n, m, 0, max_base, spread, i).unwrap();
    (g, r.random_range(0..n))
}

pub const FEASIBLE_SIZE: u64 = 2_000;

/// All simple directed cycles as arc-id sequences, each listed once
/// (rooted at its smallest vertex). Stops after `limit` cycles.
pub fn simple_cycles(g: &Graph, limit: usize) -> Vec<Vec<ArcId>> {
    fn dfs(
        g: &Graph,
        root: VertexId,
        u: VertexId,
        on_path: &mut Vec<bool>,
        path: &mut Vec<ArcId>,
        out: &mut Vec<Vec<ArcId>>,
        limit: usize,
    ) {
        for (id, a) in g.arcs().iter().enumerate() {
            if out.len() >= limit {
                return;
            }
            if a.source != u || a.target < root {
                continue;
            }
            if a.target == root {
                let mut c = path.clone();
                c.push(id);
                out.push(c);
            } else if !on_path[a.target] {
                on_path[a.target] = true;
                path.push(id);
                dfs(g, root, a.target, on_path, path, out, limit);
                path.pop();
                on_path[a.target] = false;
            }
        }
    }
    let mut out = Vec::new();
    for root in 0..g.n() {
        let mut on_path = vec![false; g.n()];
        on_path[root] = true;
        dfs(g, root, root, &mut on_path, &mut Vec::new(), &mut out, limit);
    }
    out
}

pub fn cycle_weight(g: &Graph, cycle: &[ArcId]) -> i128 {
    cycle.iter().map(|&id| g.arcs()[id].weight as i128).sum()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}
