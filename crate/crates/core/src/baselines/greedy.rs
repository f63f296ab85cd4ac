use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};
use crate::oracle::{CountingOracle, Cursor, Objective};
use crate::outcome::RunOutcome;

/// The standard greedy algorithm: `k` rounds, each adding the element of
/// largest marginal gain (smallest index on ties). Stops early once no
/// element has positive gain.
///
/// With `lazy`, stale gains are kept in a max-heap and only the top is
/// re-evaluated; by submodularity the stale value is an upper bound, so the
/// output is the same as the eager scan with no more queries.
pub fn run_greedy<F: Objective>(f: &F, k: usize, lazy: bool) -> Result<RunOutcome> {
    let n = f.ground_size();
    if k > n {
        return Err(Error::param(format!(
            "budget k = {k} exceeds ground set size {n}"
        )));
    }
    let mut oracle = CountingOracle::new(f)?;
    oracle.ledger_mut().observe_stored(n);
    let (solution, value) = if lazy {
        lazy_greedy(&mut oracle, k)?
    } else {
        eager_greedy(&mut oracle, k)?
    };
    Ok(RunOutcome {
        solution,
        value,
        ledger: oracle.into_ledger(),
    })
}

fn eager_greedy<F: Objective>(
    oracle: &mut CountingOracle<'_, F>,
    k: usize,
) -> Result<(ElementSet, f64)> {
    let n = oracle.ground_size();
    let mut chosen = ElementSet::with_capacity(k);
    let mut cursor = oracle.cursor();
    let mut value = 0.0;
    while chosen.len() < k {
        oracle.ledger_mut().record_pass();
        let mut best: Option<(Element, f64)> = None;
        for e in (0..n).map(Element::from) {
            if chosen.contains(e) {
                continue;
            }
            let gain = oracle.cached_marginal(&mut cursor, value, &[e])?;
            if best.is_none_or(|(_, g)| gain > g) {
                best = Some((e, gain));
            }
        }
        match best {
            Some((e, gain)) if gain > 0.0 => {
                oracle.extend(&mut cursor, &[e])?;
                chosen.insert(e);
                value += gain;
            }
            _ => break,
        }
    }
    Ok((chosen, value))
}

struct Entry {
    bound: f64,
    element: Element,
    /// Round in which `bound` was computed.
    round: usize,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // larger bound first, then smaller index
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound
            .total_cmp(&other.bound)
            .then_with(|| other.element.cmp(&self.element))
    }
}

fn lazy_greedy<F: Objective>(
    oracle: &mut CountingOracle<'_, F>,
    k: usize,
) -> Result<(ElementSet, f64)> {
    let n = oracle.ground_size();
    let mut chosen = ElementSet::with_capacity(k);
    let mut cursor: Cursor<F> = oracle.cursor();
    let mut value = 0.0;
    let mut heap = BinaryHeap::with_capacity(n);
    if k > 0 {
        oracle.ledger_mut().record_pass();
        for e in (0..n).map(Element::from) {
            let bound = oracle.cached_marginal(&mut cursor, value, &[e])?;
            heap.push(Entry {
                bound,
                element: e,
                round: 0,
            });
        }
    }
    let mut round = 0;
    while chosen.len() < k {
        let Some(top) = heap.pop() else { break };
        if top.round == round {
            if top.bound <= 0.0 {
                break;
            }
            oracle.extend(&mut cursor, &[top.element])?;
            chosen.insert(top.element);
            value += top.bound;
            round += 1;
        } else {
            let bound = oracle.cached_marginal(&mut cursor, value, &[top.element])?;
            heap.push(Entry {
                bound,
                element: top.element,
                round,
            });
        }
    }
    Ok((chosen, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::elements;
    use crate::objectives::generate::gnp;
    use crate::objectives::{GraphInstance, MaxCover, Modular};

    #[test]
    fn star_picks_center() {
        let g = GraphInstance::from_edges(4, [(0, 1), (0, 2), (0, 3)]);
        let f = MaxCover::new(&g);
        for lazy in [false, true] {
            let run = run_greedy(&f, 1, lazy).unwrap();
            assert_eq!(run.solution.to_vec(), elements([0u32]));
            assert_eq!(run.value, 4.0);
        }
    }

    #[test]
    fn modular_top_k() {
        let f = Modular::new(vec![3.0, 9.0, 1.0, 9.0, 4.0]);
        for lazy in [false, true] {
            let run = run_greedy(&f, 3, lazy).unwrap();
            assert_eq!(run.solution.to_vec(), elements([1u32, 3, 4]));
            assert_eq!(run.value, 22.0);
        }
    }

    #[test]
    fn stops_when_no_gain() {
        let f = Modular::new(vec![0.0, 2.0, 0.0]);
        let run = run_greedy(&f, 3, false).unwrap();
        assert_eq!(run.solution.to_vec(), elements([1u32]));
        assert_eq!(run.ledger.queries(), 3 + 2);
        let run = run_greedy(&f, 3, true).unwrap();
        assert_eq!(run.solution.to_vec(), elements([1u32]));
    }

    #[test]
    fn lazy_matches_eager_with_fewer_queries() {
        for seed in 0..20 {
            let g = gnp(40, 0.1, seed);
            let f = MaxCover::new(&g);
            let eager = run_greedy(&f, 6, false).unwrap();
            let lazy = run_greedy(&f, 6, true).unwrap();
            assert_eq!(eager.solution, lazy.solution, "seed {seed}");
            assert_eq!(eager.value, lazy.value);
            assert!(lazy.ledger.queries() <= eager.ledger.queries());
        }
    }

    #[test]
    fn rejects_k_above_n() {
        let f = Modular::new(vec![1.0; 2]);
        assert!(run_greedy(&f, 3, false).is_err());
    }
}
