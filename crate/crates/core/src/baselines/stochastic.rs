use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};
use crate::oracle::{CountingOracle, Objective};
use crate::outcome::RunOutcome;

/// Per-round sample size `⌈(n/k)·ln(1/ε)⌉`, at least 1.
pub fn sample_size(n: usize, k: usize, eps: f64) -> usize {
    ((n as f64 / k as f64) * (1.0 / eps).ln()).ceil().max(1.0) as usize
}

/// Stochastic greedy: each of `k` rounds draws a uniform sample of unselected
/// elements and adds the sample's best element if its gain is positive.
/// When the sample would cover every remaining element, all of them are
/// scanned in index order, which reproduces the eager greedy round.
pub fn run_stochastic_greedy<F: Objective>(
    f: &F,
    k: usize,
    eps: f64,
    seed: u64,
) -> Result<RunOutcome> {
    let n = f.ground_size();
    if k > n {
        return Err(Error::param(format!(
            "budget k = {k} exceeds ground set size {n}"
        )));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::param(format!("eps must lie in (0, 1), got {eps}")));
    }
    let mut oracle = CountingOracle::new(f)?;
    oracle.ledger_mut().observe_stored(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = if k == 0 { 0 } else { sample_size(n, k, eps) };

    let mut remaining: Vec<Element> = (0..n).map(Element::from).collect();
    let mut chosen = ElementSet::with_capacity(k);
    let mut cursor = oracle.cursor();
    let mut value = 0.0;
    let mut candidates = Vec::with_capacity(s);
    for _ in 0..k {
        if remaining.is_empty() {
            break;
        }
        candidates.clear();
        if s >= remaining.len() {
            candidates.extend_from_slice(&remaining);
        } else {
            let mut picked = sample(&mut rng, remaining.len(), s).into_vec();
            picked.sort_unstable();
            candidates.extend(picked.into_iter().map(|i| remaining[i]));
        }
        let mut best: Option<(Element, f64)> = None;
        for &e in &candidates {
            let gain = oracle.cached_marginal(&mut cursor, value, &[e])?;
            if best.is_none_or(|(_, g)| gain > g) {
                best = Some((e, gain));
            }
        }
        if let Some((e, gain)) = best.filter(|&(_, g)| g > 0.0) {
            oracle.extend(&mut cursor, &[e])?;
            chosen.insert(e);
            value += gain;
            let at = remaining
                .binary_search(&e)
                .expect("selected element is unselected");
            remaining.remove(at);
        }
    }
    oracle.ledger_mut().record_pass();
    Ok(RunOutcome {
        solution: chosen,
        value,
        ledger: oracle.into_ledger(),
    })
}
