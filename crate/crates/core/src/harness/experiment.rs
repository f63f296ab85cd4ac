use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::baselines::{run_greedy, run_stochastic_greedy};
use crate::boostratio::{default_delta, run_qs_br, run_qs_plus_plus};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::objectives::{load_edge_list, make_revenue_instance, AdversarialInstance, MaxCover};
use crate::oracle::Objective;
use crate::outcome::RunOutcome;
use crate::quickstream::{
    run_quicksingleton, run_quickstream, run_quickstream_largek, LargeKConfig, QuickStreamConfig,
};

use super::config::{Algorithm, ExperimentConfig, ObjectiveKind};
use super::metrics::RunMetrics;

/// Node order, or a seeded permutation of it.
pub fn stream_order(n: usize, shuffle: Option<u64>) -> Vec<Element> {
    let mut order: Vec<Element> = (0..n).map(Element::from).collect();
    if let Some(seed) = shuffle {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    order
}

/// Runs one algorithm once. `seed` only matters for randomized algorithms.
pub fn run_algorithm<F: Objective>(
    config: &ExperimentConfig,
    f: &F,
    order: &[Element],
    seed: u64,
) -> Result<RunOutcome> {
    let ExperimentConfig { k, c, eps, .. } = *config;
    let outcome = match config.algorithm {
        Algorithm::Qs => {
            let qs = QuickStreamConfig::new(k, c, eps).with_delta(config.delta.unwrap_or(1.0));
            run_quickstream(f, order, qs)?.outcome
        }
        Algorithm::QsPlusPlus => {
            let delta = config.delta.unwrap_or_else(|| default_delta(c));
            run_qs_plus_plus(f, order, k, c, eps, delta)?.outcome
        }
        Algorithm::QsBr => run_qs_br(f, order, k, eps)?.outcome,
        Algorithm::QSingleton => run_quicksingleton(f, order, c)?,
        Algorithm::QsLargeK => run_quickstream_largek(f, order, &LargeKConfig::new(k, c))?.outcome,
        Algorithm::Greedy => run_greedy(f, k, false)?,
        Algorithm::GreedyLazy => run_greedy(f, k, true)?,
        Algorithm::Ltl => run_stochastic_greedy(f, k, eps, seed)?,
    };
    Ok(outcome)
}

fn metrics_row(
    config: &ExperimentConfig,
    n: usize,
    outcome: &RunOutcome,
    wall_ms: f64,
) -> RunMetrics {
    RunMetrics {
        algorithm: config.algorithm.name().to_string(),
        n,
        k: config.k,
        c: config.c,
        eps: config.eps,
        objective_value: outcome.value,
        queries: outcome.ledger.queries(),
        refresh_queries: outcome.ledger.refresh_queries(),
        peak_stored: outcome.ledger.peak_stored(),
        passes: outcome.ledger.passes(),
        wall_ms,
    }
}

fn timed<T>(run: impl FnOnce() -> Result<T>) -> Result<(T, f64)> {
    let start = Instant::now();
    let out = run()?;
    Ok((out, start.elapsed().as_secs_f64() * 1e3))
}

fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_add(trial as u64)
}

/// All trials of `config` against an already-built objective.
pub fn run_on_objective<F: Objective>(config: &ExperimentConfig, f: &F) -> Result<Vec<RunMetrics>> {
    config.algorithm.check(config.k, config.c)?;
    let n = f.ground_size();
    if config.k > n {
        return Err(Error::param(format!("k = {} exceeds n = {n}", config.k)));
    }
    let order = stream_order(n, config.shuffle);
    (0..config.trial_count())
        .map(|t| {
            let (outcome, ms) =
                timed(|| run_algorithm(config, f, &order, trial_seed(config.seed, t)))?;
            Ok(metrics_row(config, n, &outcome, ms))
        })
        .collect()
}

/// Loads the dataset named by `config` and runs every trial. Parameters are
/// validated before the dataset is touched.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<RunMetrics>> {
    config.validate()?;
    match config.objective {
        ObjectiveKind::MaxCover => {
            let graph = load_edge_list(config.graph.as_ref().expect("validated"))?;
            run_on_objective(config, &MaxCover::new(&graph))
        }
        ObjectiveKind::RevMax => {
            let graph = load_edge_list(config.graph.as_ref().expect("validated"))?;
            run_on_objective(config, &make_revenue_instance(&graph, config.seed))
        }
        ObjectiveKind::Adversarial => {
            let n = config.n.expect("validated");
            let order = stream_order(n, config.shuffle);
            (0..config.trial_count())
                .map(|t| {
                    let seed = trial_seed(config.seed, t);
                    let hidden = Element::from(ChaCha8Rng::seed_from_u64(seed).random_range(0..n));
                    let g = AdversarialInstance::hidden(n, config.c, config.k, hidden)?;
                    let (outcome, ms) = timed(|| run_algorithm(config, &g, &order, seed))?;
                    Ok(metrics_row(config, n, &outcome, ms))
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::generate::gnm;

    #[test]
    fn every_algorithm_runs() {
        let g = gnm(200, 600, 1);
        let f = MaxCover::new(&g);
        for alg in Algorithm::ALL {
            let k = match alg {
                Algorithm::QSingleton => 1,
                _ => 6,
            };
            let mut cfg = ExperimentConfig::new(alg, ObjectiveKind::MaxCover, k);
            cfg.c = 2;
            let rows = run_on_objective(&cfg, &f).unwrap();
            assert_eq!(rows.len(), cfg.trial_count(), "{alg}");
            for r in &rows {
                assert!(r.objective_value > 0.0, "{alg}");
                assert_eq!(r.algorithm, alg.name());
            }
        }
    }

    #[test]
    fn ltl_trials_use_distinct_seeds() {
        let g = gnm(500, 1500, 2);
        let f = MaxCover::new(&g);
        let cfg = ExperimentConfig::new(Algorithm::Ltl, ObjectiveKind::MaxCover, 10);
        let rows = run_on_objective(&cfg, &f).unwrap();
        assert_eq!(rows.len(), 10);
        let again = run_on_objective(&cfg, &f).unwrap();
        for (a, b) in rows.iter().zip(&again) {
            assert_eq!(
                (a.objective_value, a.queries),
                (b.objective_value, b.queries)
            );
        }
    }

    #[test]
    fn shuffle_is_a_permutation() {
        let mut order = stream_order(50, Some(3));
        assert_ne!(order, stream_order(50, None));
        order.sort();
        assert_eq!(order, stream_order(50, None));
    }
}
