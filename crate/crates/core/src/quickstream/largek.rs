use std::collections::VecDeque;

use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};
use crate::oracle::{CountingOracle, Objective};
use crate::outcome::RunOutcome;

use super::{check_block_size, largek_applies, RefreshPolicy};

#[derive(Clone, Debug)]
pub struct LargeKConfig {
    pub k: usize,
    pub c: usize,
    pub refresh: RefreshPolicy,
    /// Track the true `f(A)` with uncounted evaluations; see
    /// [`LargeKRun::true_value_decreases`].
    pub audit: bool,
}

impl LargeKConfig {
    pub fn new(k: usize, c: usize) -> Self {
        LargeKConfig {
            k,
            c,
            refresh: RefreshPolicy::default(),
            audit: false,
        }
    }

    pub fn with_refresh(mut self, refresh: RefreshPolicy) -> Self {
        self.refresh = refresh;
        self
    }

    pub fn with_audit(mut self, audit: bool) -> Self {
        self.audit = audit;
        self
    }
}

#[derive(Clone, Debug)]
pub struct LargeKRun {
    /// `outcome.value` is measured outside the ledger: the algorithm itself
    /// never queries its returned set.
    pub outcome: RunOutcome,
    pub deletions: u64,
    pub progress_violations: u64,
    pub true_value_decreases: u64,
}

/// Block streaming for large budgets (`k ≥ 8c/e`): accept a block when its
/// gain is at least `c·f(A)/k`, delete whole blocks, and return the last `k`
/// elements added. Exactly one query per block.
pub fn run_quickstream_largek<F: Objective>(
    f: &F,
    order: &[Element],
    config: &LargeKConfig,
) -> Result<LargeKRun> {
    let LargeKConfig {
        k,
        c,
        refresh,
        audit,
    } = *config;
    check_block_size(c)?;
    if !largek_applies(k, c) {
        return Err(Error::param(format!(
            "the large-budget variant needs k >= 8c/e (got k = {k}, c = {c})"
        )));
    }
    let mut oracle = CountingOracle::new(f)?;
    let lg = (k as f64).log2();
    let block_limit = 6.0 * (k as f64 + 1.0) * lg;
    let blocks_kept = (3.0 * (k as f64 + 1.0) * lg).ceil() as usize;

    let mut buffer = ElementSet::new();
    // sizes of the blocks currently in `buffer`, oldest first
    let mut blocks: VecDeque<usize> = VecDeque::new();
    let mut cursor = oracle.cursor();
    let mut value = 0.0;
    let mut deletions = 0;
    let mut progress_violations = 0;
    let mut true_value = 0.0;
    let mut true_value_decreases = 0;

    for block in order.chunks(c) {
        oracle
            .ledger_mut()
            .observe_stored(buffer.len() + block.len());
        let before = value;
        let union = oracle.query_with(&mut cursor, block)?;
        if union - value >= c as f64 * value / k as f64 {
            oracle.extend(&mut cursor, block)?;
            buffer.extend_from_slice(block);
            blocks.push_back(block.len());
            value = union;
        }
        if blocks.len() as f64 > block_limit {
            let drop = blocks.len() - blocks_kept;
            blocks.drain(..drop);
            buffer.retain_most_recent(blocks.iter().sum());
            cursor = oracle.cursor_at(buffer.as_slice())?;
            deletions += 1;
            if refresh == RefreshPolicy::CountedQuery {
                value = oracle.refresh(&cursor);
            }
        }
        if value < before {
            progress_violations += 1;
        }
        debug_assert!(
            value >= before,
            "buffer value decreased from {before} to {value}"
        );
        if audit {
            let now = oracle.audit(&cursor);
            if now < true_value {
                true_value_decreases += 1;
            }
            true_value = now;
        }
    }
    oracle.ledger_mut().record_pass();

    let solution: ElementSet = buffer.most_recent(k).iter().copied().collect();
    let value = f.measure(solution.as_slice());
    Ok(LargeKRun {
        outcome: RunOutcome {
            solution,
            value,
            ledger: oracle.into_ledger(),
        },
        deletions,
        progress_violations,
        true_value_decreases,
    })
}
