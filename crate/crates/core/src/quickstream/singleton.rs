use crate::element::{Element, ElementSet};
use crate::error::Result;
use crate::oracle::{CountingOracle, Objective};
use crate::outcome::RunOutcome;

use super::check_block_size;

/// Budget-one streaming: keep the best block seen so far (by `f(C)`), then
/// return its best single element.
///
/// One query per block plus at most `c` at the end.
pub fn run_quicksingleton<F: Objective>(f: &F, order: &[Element], c: usize) -> Result<RunOutcome> {
    check_block_size(c)?;
    let mut oracle = CountingOracle::new(f)?;
    let mut best_block: Vec<Element> = Vec::new();
    let mut best_value = 0.0;
    for block in order.chunks(c) {
        oracle
            .ledger_mut()
            .observe_stored(best_block.len() + block.len());
        let v = oracle.query(block)?;
        if v > best_value {
            best_block.clear();
            best_block.extend_from_slice(block);
            best_value = v;
        }
    }
    oracle.ledger_mut().record_pass();

    let (solution, value) = match best_block.as_slice() {
        [] => (ElementSet::new(), 0.0),
        [only] => (std::iter::once(*only).collect(), best_value),
        block => {
            let mut best = (block[0], f64::NEG_INFINITY);
            for &e in block {
                let v = oracle.query(&[e])?;
                if v > best.1 {
                    best = (e, v);
                }
            }
            (std::iter::once(best.0).collect(), best.1)
        }
    };
    Ok(RunOutcome {
        solution,
        value,
        ledger: oracle.into_ledger(),
    })
}
