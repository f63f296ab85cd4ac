//! Seeded random graph families for tests and desk-scale experiments.

use std::collections::HashSet;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GraphInstance;

/// G(n, p): each of the `n(n-1)/2` pairs is an edge with probability `p`.
/// Intended for small `n`.
pub fn gnp(n: usize, p: f64, seed: u64) -> GraphInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    GraphInstance::from_edges(n, edges)
}

/// G(n, m): `m` distinct edges drawn uniformly at random.
pub fn gnm(n: usize, m: usize, seed: u64) -> GraphInstance {
    assert!(n >= 2);
    let max_edges = n * (n - 1) / 2;
    assert!(m <= max_edges, "{m} edges do not fit on {n} nodes");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(m);
    while seen.len() < m {
        let u = rng.random_range(0..n as u32);
        let v = rng.random_range(0..n as u32);
        if u != v {
            seen.insert((u.min(v), u.max(v)));
        }
    }
    let mut edges: Vec<_> = seen.into_iter().collect();
    edges.sort_unstable();
    GraphInstance::from_edges(n, edges)
}

/// Preferential attachment: each new node links to `m` distinct existing
/// nodes chosen with probability proportional to degree. Yields a
/// heavy-tailed degree sequence with about `n * m` edges.
pub fn barabasi_albert(n: usize, m: usize, seed: u64) -> GraphInstance {
    assert!(m >= 1 && n > m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n * m);
    // every edge endpoint, so a uniform pick is degree-proportional
    let mut endpoints: Vec<u32> = Vec::with_capacity(2 * n * m);
    // seed clique on the first m + 1 nodes
    for u in 0..=m as u32 {
        for v in u + 1..=m as u32 {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    let mut targets = Vec::with_capacity(m);
    for new in (m + 1) as u32..n as u32 {
        targets.clear();
        while targets.len() < m {
            let t = *endpoints.choose(&mut rng).unwrap();
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((new, t));
            endpoints.extend([new, t]);
        }
    }
    GraphInstance::from_edges(n, edges)
}
