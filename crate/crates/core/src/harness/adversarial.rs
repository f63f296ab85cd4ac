use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::element::Element;
use crate::error::Result;
use crate::objectives::AdversarialInstance;

use super::config::{Algorithm, ExperimentConfig, ObjectiveKind};
use super::experiment::{run_algorithm, stream_order};

#[derive(Clone, Debug)]
pub struct AdversarialReport {
    pub algorithm: Algorithm,
    pub trials: usize,
    pub distinguished: usize,
    /// Fraction of trials with at least one distinguishing query.
    pub rate: f64,
    /// Mean query count `m` on the plain function.
    pub mean_queries: f64,
    /// `m(ck − 1)/n`, the union bound on the distinguishing probability.
    pub bound: f64,
    /// Binomial standard error at the bound, `√(p(1 − p)/trials)` with
    /// `p = min(bound, 1)`.
    pub sigma: f64,
}

impl AdversarialReport {
    /// Whether the observed rate is within three standard errors of the bound.
    pub fn within_bound(&self) -> bool {
        self.rate <= self.bound + 3.0 * self.sigma
    }
}

/// Runs `algorithm` against the hidden-element function with a uniformly
/// random hidden element per trial, and counts trials in which it queried a
/// set of at most `ck − 1` elements containing that element.
///
/// Until such a query happens the algorithm cannot tell the hidden function
/// from the plain one, so its queries up to that point are exactly those of
/// its run on the plain function; `m` is measured there, per trial seed.
pub fn adversarial_trials(
    algorithm: Algorithm,
    n: usize,
    c: usize,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<AdversarialReport> {
    let mut config = ExperimentConfig::new(algorithm, ObjectiveKind::Adversarial, k);
    config.n = Some(n);
    config.c = c;
    config.trials = Some(trials);
    config.seed = seed;
    config.validate()?;
    let order = stream_order(n, None);

    let plain = AdversarialInstance::plain(n, c, k)?;
    let fixed_queries = if algorithm.is_randomized() {
        None
    } else {
        Some(
            run_algorithm(&config, &plain, &order, seed)?
                .ledger
                .queries(),
        )
    };

    let per_trial: Vec<(bool, u64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let trial_seed = seed.wrapping_add(t as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64 + 1);
            let hidden = Element::from(rng.random_range(0..n));
            let g = AdversarialInstance::hidden(n, c, k, hidden)?;
            run_algorithm(&config, &g, &order, trial_seed)?;
            let m = match fixed_queries {
                Some(m) => m,
                None => {
                    let plain = AdversarialInstance::plain(n, c, k)?;
                    run_algorithm(&config, &plain, &order, trial_seed)?
                        .ledger
                        .queries()
                }
            };
            Ok((g.distinguishing_queries() > 0, m))
        })
        .collect::<Result<_>>()?;

    let distinguished = per_trial.iter().filter(|(d, _)| *d).count();
    let (rate, mean_queries) = if trials == 0 {
        (0.0, 0.0)
    } else {
        let t = trials as f64;
        (
            distinguished as f64 / t,
            per_trial.iter().map(|&(_, m)| m as f64).sum::<f64>() / t,
        )
    };
    let bound = mean_queries * (c * k - 1) as f64 / n as f64;
    let p = bound.min(1.0);
    let sigma = if trials == 0 {
        0.0
    } else {
        (p * (1.0 - p) / trials as f64).sqrt()
    };
    Ok(AdversarialReport {
        algorithm,
        trials,
        distinguished,
        rate,
        mean_queries,
        bound,
        sigma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials_is_degenerate() {
        let r = adversarial_trials(Algorithm::Qs, 100, 2, 3, 0, 1).unwrap();
        assert_eq!(r.rate, 0.0);
        assert!(r.within_bound());
    }

    #[test]
    fn quickstream_rarely_distinguishes() {
        let r = adversarial_trials(Algorithm::Qs, 2000, 2, 5, 200, 9).unwrap();
        // one query per block plus c at the end
        assert_eq!(r.mean_queries, 1002.0);
        assert!(r.within_bound(), "{r:?}");
        assert!(r.rate < 0.05);
    }

    #[test]
    fn greedy_always_distinguishes() {
        let r = adversarial_trials(Algorithm::Greedy, 300, 2, 2, 20, 3).unwrap();
        assert_eq!(r.rate, 1.0);
        assert!(r.bound > 1.0);
        assert!(r.within_bound());
    }
}
