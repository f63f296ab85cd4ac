use crate::element::Element;
use crate::error::{Error, Result};
use crate::oracle::Objective;
use crate::outcome::RunOutcome;

use super::{
    check_block_size, largek_applies, largek_ratio, run_quicksingleton, run_quickstream,
    run_quickstream_largek, singleton_ratio, stream_ratio, LargeKConfig, QuickStreamConfig,
};

/// Which single-pass variant handles a `(k, c)` pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Singleton,
    Stream,
    LargeK,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Singleton => "qsingleton",
            Route::Stream => "qs",
            Route::LargeK => "qslargek",
        }
    }
}

pub fn select_route(k: usize, c: usize) -> Result<Route> {
    check_block_size(c)?;
    match k {
        0 => Err(Error::param("budget k must be at least 1")),
        1 => Ok(Route::Singleton),
        _ if largek_applies(k, c) => Ok(Route::LargeK),
        _ => Ok(Route::Stream),
    }
}

#[derive(Clone, Debug)]
pub struct DispatchRun {
    pub route: Route,
    pub outcome: RunOutcome,
    /// Approximation ratio guaranteed by the chosen variant.
    pub ratio: f64,
}

/// Runs whichever single-pass variant has the best guarantee for `(k, c)`.
pub fn dispatch<F: Objective>(
    f: &F,
    order: &[Element],
    k: usize,
    c: usize,
    eps: f64,
) -> Result<DispatchRun> {
    let route = select_route(k, c)?;
    let (outcome, ratio) = match route {
        Route::Singleton => (run_quicksingleton(f, order, c)?, singleton_ratio(c)),
        Route::Stream => (
            run_quickstream(f, order, QuickStreamConfig::new(k, c, eps))?.outcome,
            stream_ratio(c, k, eps),
        ),
        Route::LargeK => (
            run_quickstream_largek(f, order, &LargeKConfig::new(k, c))?.outcome,
            largek_ratio(c, k),
        ),
    };
    Ok(DispatchRun {
        route,
        outcome,
        ratio,
    })
}
