//! Threshold passes that lift any constant-ratio solution value to
//! `1 − e^{−1+ε}`, and the two compositions built on it.

use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};
use crate::oracle::{CountingOracle, Objective, QueryLedger};
use crate::outcome::RunOutcome;
use crate::quickstream::{delta_ratio, dispatch, run_quickstream, QuickStreamConfig, Route};

#[derive(Clone, Debug)]
pub struct BoostParams {
    /// A value with `Γ ≤ OPT ≤ Γ/α`. Cannot be checked here; a wrong `Γ`
    /// silently voids the guarantee.
    pub gamma: f64,
    pub alpha: f64,
    pub eps: f64,
    pub k: usize,
    /// The schedule stops once `τ < (1 − ε)Γ / (floor_divisor · k)`.
    #[doc(hidden)]
    pub floor_divisor: f64,
}

impl BoostParams {
    pub fn new(gamma: f64, alpha: f64, eps: f64, k: usize) -> Self {
        BoostParams {
            gamma,
            alpha,
            eps,
            k,
            floor_divisor: 4.0,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::param(format!(
                "alpha must lie in (0, 1], got {}",
                self.alpha
            )));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::param(format!(
                "eps must lie in (0, 1), got {}",
                self.eps
            )));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(Error::param(format!(
                "gamma must be finite and >= 0, got {}",
                self.gamma
            )));
        }
        if self.k == 0 {
            return Err(Error::param("budget k must be at least 1"));
        }
        Ok(())
    }

    pub fn initial_threshold(&self) -> f64 {
        self.gamma / (self.alpha * self.k as f64)
    }

    pub fn floor(&self) -> f64 {
        (1.0 - self.eps) * self.gamma / (self.floor_divisor * self.k as f64)
    }
}

/// `⌈ln(4/α)/ε⌉ + 1`.
pub fn pass_bound(alpha: f64, eps: f64) -> u32 {
    ((4.0 / alpha).ln() / eps).ceil() as u32 + 1
}

/// One element accepted by a threshold pass.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Addition {
    pub element: Element,
    pub threshold: f64,
    pub value_before: f64,
    pub value_after: f64,
}

#[derive(Clone, Debug)]
pub struct BoostRun {
    pub outcome: RunOutcome,
    /// Thresholds used, one per pass.
    pub thresholds: Vec<f64>,
    pub additions: Vec<Addition>,
}

/// Repeated threshold passes over `ground` with `τ` falling geometrically
/// from `Γ/(αk)` towards `Γ/(4k)`; each pass adds every element whose
/// marginal gain clears `τ`, stopping as soon as `k` are held.
pub fn run_boostratio<F: Objective>(
    f: &F,
    params: &BoostParams,
    ground: &[Element],
) -> Result<BoostRun> {
    params.validate()?;
    let mut oracle = CountingOracle::new(f)?;
    let mut run = BoostRun {
        outcome: RunOutcome::empty(QueryLedger::default()),
        thresholds: Vec::new(),
        additions: Vec::new(),
    };
    if params.gamma == 0.0 {
        return Ok(run);
    }

    let k = params.k;
    let floor = params.floor();
    let mut tau = params.initial_threshold();
    let mut chosen = ElementSet::with_capacity(k);
    let mut cursor = oracle.cursor();
    let mut value = 0.0;

    'schedule: while tau >= floor {
        tau *= 1.0 - params.eps;
        run.thresholds.push(tau);
        oracle.ledger_mut().record_pass();
        for &e in ground {
            if chosen.contains(e) {
                continue;
            }
            oracle.ledger_mut().observe_stored(chosen.len() + 1);
            let with = oracle.query_with(&mut cursor, &[e])?;
            if with - value >= tau {
                oracle.extend(&mut cursor, &[e])?;
                chosen.insert(e);
                run.additions.push(Addition {
                    element: e,
                    threshold: tau,
                    value_before: value,
                    value_after: with,
                });
                value = with;
            }
            if chosen.len() == k {
                break 'schedule;
            }
        }
    }

    run.outcome = RunOutcome {
        solution: chosen,
        value,
        ledger: oracle.into_ledger(),
    };
    Ok(run)
}

#[derive(Clone, Debug)]
pub struct ComposedRun {
    pub outcome: RunOutcome,
    pub feed_value: f64,
    /// Ratio handed to the boosting phase as `α`.
    pub feed_ratio: f64,
    /// Value of the boosted solution, if the boosting phase ran.
    pub boosted_value: Option<f64>,
    pub boost_passes: u32,
    /// Size of the ground set the boosting phase ran over.
    pub boost_ground: usize,
}

fn better(
    feed: ElementSet,
    feed_value: f64,
    boosted: ElementSet,
    boosted_value: f64,
) -> (ElementSet, f64) {
    if boosted_value > feed_value {
        (boosted, boosted_value)
    } else {
        (feed, feed_value)
    }
}

/// Single-pass feed with `c = 1`, then threshold passes over the whole
/// ground set seeded with the feed's value and guarantee.
pub fn run_qs_br<F: Objective>(
    f: &F,
    order: &[Element],
    k: usize,
    eps: f64,
) -> Result<ComposedRun> {
    let feed = dispatch(f, order, k, 1, eps)?;
    let feed_value = feed.outcome.value;
    let mut ledger = feed.outcome.ledger;
    let mut run = ComposedRun {
        outcome: RunOutcome::empty(QueryLedger::default()),
        feed_value,
        feed_ratio: feed.ratio,
        boosted_value: None,
        boost_passes: 0,
        boost_ground: order.len(),
    };
    let (solution, value) = if feed_value > 0.0 {
        let boost = run_boostratio(f, &BoostParams::new(feed_value, feed.ratio, eps, k), order)?;
        ledger.absorb(&boost.outcome.ledger);
        run.boost_passes = boost.outcome.ledger.passes();
        run.boosted_value = Some(boost.outcome.value);
        better(
            feed.outcome.solution,
            feed_value,
            boost.outcome.solution,
            boost.outcome.value,
        )
    } else {
        (feed.outcome.solution, feed_value)
    };
    run.outcome = RunOutcome {
        solution,
        value,
        ledger,
    };
    Ok(run)
}

/// The acceptance multiplier used with post-processing, `δ = c/10`.
pub fn default_delta(c: usize) -> f64 {
    c as f64 / 10.0
}

/// Single pass of the block algorithm with threshold `δ·f(A)/k`, then
/// threshold passes over the retained buffer. Still one pass over the
/// stream: the boosting phase reads only what the buffer already holds.
pub fn run_qs_plus_plus<F: Objective>(
    f: &F,
    order: &[Element],
    k: usize,
    c: usize,
    eps: f64,
    delta: f64,
) -> Result<ComposedRun> {
    if k == 1 {
        let feed = dispatch(f, order, k, c, eps)?;
        debug_assert_eq!(feed.route, Route::Singleton);
        return Ok(ComposedRun {
            feed_value: feed.outcome.value,
            feed_ratio: feed.ratio,
            outcome: feed.outcome,
            boosted_value: None,
            boost_passes: 0,
            boost_ground: 0,
        });
    }
    let qs = run_quickstream(
        f,
        order,
        QuickStreamConfig::new(k, c, eps).with_delta(delta),
    )?;
    let feed_value = qs.outcome.value;
    let alpha = delta_ratio(c, delta);
    let mut ledger = qs.outcome.ledger;
    let mut run = ComposedRun {
        outcome: RunOutcome::empty(QueryLedger::default()),
        feed_value,
        feed_ratio: alpha,
        boosted_value: None,
        boost_passes: 0,
        boost_ground: qs.buffer.len(),
    };
    let (solution, value) = if feed_value > 0.0 {
        let boost = run_boostratio(
            f,
            &BoostParams::new(feed_value, alpha, eps, k),
            qs.buffer.as_slice(),
        )?;
        ledger.absorb_offline(&boost.outcome.ledger);
        // the buffer stays resident while the boosted set is built
        ledger.observe_stored(qs.buffer.len() + boost.outcome.ledger.peak_stored());
        run.boost_passes = boost.outcome.ledger.passes();
        run.boosted_value = Some(boost.outcome.value);
        better(
            qs.outcome.solution,
            feed_value,
            boost.outcome.solution,
            boost.outcome.value,
        )
    } else {
        (qs.outcome.solution, feed_value)
    };
    run.outcome = RunOutcome {
        solution,
        value,
        ledger,
    };
    Ok(run)
}
