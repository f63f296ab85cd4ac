use std::fmt;
use std::path::PathBuf;

use clap::ValueEnum;

use crate::error::{Error, Result};
use crate::quickstream::largek_applies;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum Algorithm {
    #[value(name = "qs")]
    Qs,
    #[value(name = "qs++")]
    QsPlusPlus,
    #[value(name = "qs-br")]
    QsBr,
    #[value(name = "qsingleton")]
    QSingleton,
    #[value(name = "qslargek")]
    QsLargeK,
    #[value(name = "greedy")]
    Greedy,
    #[value(name = "greedy-lazy")]
    GreedyLazy,
    #[value(name = "ltl")]
    Ltl,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::Qs,
        Algorithm::QsPlusPlus,
        Algorithm::QsBr,
        Algorithm::QSingleton,
        Algorithm::QsLargeK,
        Algorithm::Greedy,
        Algorithm::GreedyLazy,
        Algorithm::Ltl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Qs => "qs",
            Algorithm::QsPlusPlus => "qs++",
            Algorithm::QsBr => "qs-br",
            Algorithm::QSingleton => "qsingleton",
            Algorithm::QsLargeK => "qslargek",
            Algorithm::Greedy => "greedy",
            Algorithm::GreedyLazy => "greedy-lazy",
            Algorithm::Ltl => "ltl",
        }
    }

    pub fn is_randomized(self) -> bool {
        self == Algorithm::Ltl
    }

    /// Parameter checks that must pass before any oracle work.
    pub fn check(self, k: usize, c: usize) -> Result<()> {
        match self {
            Algorithm::Qs if k < 2 => {
                Err(Error::param("qs needs k >= 2; use qsingleton for k = 1"))
            }
            Algorithm::QSingleton if k != 1 => {
                Err(Error::param(format!("qsingleton needs k = 1, got {k}")))
            }
            Algorithm::QsLargeK if !largek_applies(k, c) => Err(Error::param(format!(
                "qslargek needs k >= 8c/e = {:.3} (got k = {k}, c = {c})",
                8.0 * c as f64 / std::f64::consts::E
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveKind {
    #[value(name = "maxcover")]
    MaxCover,
    #[value(name = "revmax")]
    RevMax,
    #[value(name = "adversarial")]
    Adversarial,
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub objective: ObjectiveKind,
    /// Edge list for the graph objectives.
    pub graph: Option<PathBuf>,
    /// Ground set size for the adversarial objective.
    pub n: Option<usize>,
    pub k: usize,
    pub c: usize,
    pub eps: f64,
    /// Acceptance multiplier; `qs++` defaults to `c/10`, `qs` to 1.
    pub delta: Option<f64>,
    pub seed: u64,
    /// Defaults to 10 for randomized runs and 1 otherwise.
    pub trials: Option<usize>,
    /// Shuffle the stream with this seed instead of using node order.
    pub shuffle: Option<u64>,
}

impl ExperimentConfig {
    pub fn new(algorithm: Algorithm, objective: ObjectiveKind, k: usize) -> Self {
        ExperimentConfig {
            algorithm,
            objective,
            graph: None,
            n: None,
            k,
            c: 1,
            eps: 0.1,
            delta: None,
            seed: 0,
            trials: None,
            shuffle: None,
        }
    }

    /// Whether each trial draws fresh randomness.
    pub fn is_randomized(&self) -> bool {
        self.algorithm.is_randomized() || self.objective == ObjectiveKind::Adversarial
    }

    pub fn trial_count(&self) -> usize {
        self.trials
            .unwrap_or(if self.is_randomized() { 10 } else { 1 })
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::param("k must be at least 1"));
        }
        if self.c == 0 {
            return Err(Error::param("c must be at least 1"));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::param(format!(
                "eps must lie in (0, 1), got {}",
                self.eps
            )));
        }
        if let Some(d) = self.delta {
            if !(d > 0.0 && d.is_finite()) {
                return Err(Error::param(format!("delta must be positive, got {d}")));
            }
        }
        self.algorithm.check(self.k, self.c)?;
        match self.objective {
            ObjectiveKind::MaxCover | ObjectiveKind::RevMax if self.graph.is_none() => {
                Err(Error::param("graph objectives need --graph"))
            }
            ObjectiveKind::Adversarial => match self.n {
                None => Err(Error::param("the adversarial objective needs --n")),
                Some(n) if self.k > n => {
                    Err(Error::param(format!("k = {} exceeds n = {n}", self.k)))
                }
                Some(_) if self.c < 2 => {
                    Err(Error::param("the adversarial objective needs c >= 2"))
                }
                Some(_) => Ok(()),
            },
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn largek_usage_error() {
        let mut cfg = ExperimentConfig::new(Algorithm::QsLargeK, ObjectiveKind::MaxCover, 2);
        cfg.graph = Some("g.txt".into());
        assert!(cfg.validate().is_err());
        cfg.k = 3;
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn trial_defaults() {
        let cfg = ExperimentConfig::new(Algorithm::Ltl, ObjectiveKind::MaxCover, 5);
        assert_eq!(cfg.trial_count(), 10);
        let cfg = ExperimentConfig::new(Algorithm::Qs, ObjectiveKind::MaxCover, 5);
        assert_eq!(cfg.trial_count(), 1);
    }

    #[test]
    fn names_match_value_enum() {
        for alg in Algorithm::ALL {
            assert_eq!(Algorithm::from_str(alg.name(), false).unwrap(), alg);
        }
    }
}
