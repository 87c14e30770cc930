//! Seeded instance generators. All randomness comes from ChaCha8 seeded via
//! `seed_from_u64`, so instances are identical across runs and platforms.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Arc, Graph, Weight};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `m` arcs with uniform endpoints (self-loops allowed) and weights uniform
/// in `[w_min, w_max]`; then `round(neg_fraction * m)` arcs chosen uniformly
/// get a weight uniform in `[-max(|w_min|, 1), -1]`.
pub fn gen_random(
    n: usize,
    m: usize,
    w_min: Weight,
    w_max: Weight,
    neg_fraction: f64,
    seed: u64,
) -> Result<Graph> {
    if w_min > w_max {
        return Err(Error::ContractViolation(format!(
            "w_min {w_min} exceeds w_max {w_max}"
        )));
    }
    if !(0.0..=1.0).contains(&neg_fraction) {
        return Err(Error::ContractViolation(format!(
            "neg_fraction {neg_fraction} outside [0, 1]"
        )));
    }
    if n == 0 {
        return Err(Error::EmptyVertexSet);
    }
    let mut rng = rng(seed);
    let mut arcs: Vec<Arc> = (0..m)
        .map(|_| {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            Arc::new(u, v, rng.random_range(w_min..=w_max))
        })
        .collect();
    let negatives = (neg_fraction * m as f64).round() as usize;
    let floor = -(w_min.unsigned_abs().max(1) as Weight);
    for i in sample(&mut rng, m, negatives.min(m)) {
        arcs[i].weight = rng.random_range(floor..=-1);
    }
    Graph::new(n, arcs)
}

/// Fan-out of `gen_layered` for widths of at least 5.
pub const LAYERED_FANOUT: usize = 5;

pub const LAYERED_MAX_ABS: Weight = 1000;

/// Layered DAG of `layers + 1` vertex layers of `width` vertices each;
/// vertex `i` of layer `k` has id `k * width + i`. Every vertex sends
/// `min(width, 5)` arcs into the next layer (the first to the vertex with the
/// same index, the rest random). Arcs leaving even layers get weights in
/// `[1, 1000]`, arcs leaving odd layers weights in `[-1000, -1]`, so every
/// source-to-sink path alternates passive arcs and snake heads and its
/// prefix sums swing both ways.
///
/// With `width = 1` this is an alternating chain `+, -, +, -, ...`.
pub fn gen_layered(layers: usize, width: usize, seed: u64) -> Result<Graph> {
    if layers < 2 {
        return Err(Error::ContractViolation("layered graphs need at least 2 layers".into()));
    }
    if width == 0 {
        return Err(Error::ContractViolation("layer width must be positive".into()));
    }
    let n = (layers + 1) * width;
    let fanout = width.min(LAYERED_FANOUT);
    let mut rng = rng(seed);
    let mut arcs = Vec::with_capacity(layers * width * fanout);
    for k in 0..layers {
        for i in 0..width {
            let u = k * width + i;
            for j in 0..fanout {
                let t = if j == 0 { i } else { rng.random_range(0..width) };
                let w = if k % 2 == 0 {
                    rng.random_range(1..=LAYERED_MAX_ABS)
                } else {
                    rng.random_range(-LAYERED_MAX_ABS..=-1)
                };
                arcs.push(Arc::new(u, (k + 1) * width + t, w));
            }
        }
    }
    Graph::new(n, arcs)
}

/// Random instance without negative cycles: base weights uniform in
/// `[min_base, max_base]` shifted by hidden potentials in `[-spread, 0]`,
/// i.e. `w(u,v) = base + p[u] - p[v]`. Every cycle keeps its base weight, so
/// with `min_base >= 1` every cycle is strictly positive.
pub fn gen_hidden_potential(
    n: usize,
    m: usize,
    min_base: Weight,
    max_base: Weight,
    spread: Weight,
    seed: u64,
) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyVertexSet);
    }
    if min_base < 0 || min_base > max_base || spread < 0 {
        return Err(Error::ContractViolation(
            "need 0 <= min_base <= max_base and spread >= 0".into(),
        ));
    }
    let mut rng = rng(seed);
    let p: Vec<Weight> = (0..n).map(|_| -rng.random_range(0..=spread)).collect();
    let arcs = (0..m)
        .map(|_| {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            let base = rng.random_range(min_base..=max_base);
            Arc::new(u, v, base + p[u] - p[v])
        })
        .collect();
    Graph::new(n, arcs)
}
