use crate::element::ElementSet;
use crate::oracle::QueryLedger;

/// What an algorithm run hands back: a feasible solution, its objective
/// value, and the run's accounting.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub solution: ElementSet,
    pub value: f64,
    pub ledger: QueryLedger,
}

impl RunOutcome {
    pub fn empty(ledger: QueryLedger) -> Self {
        RunOutcome {
            solution: ElementSet::new(),
            value: 0.0,
            ledger,
        }
    }
}
