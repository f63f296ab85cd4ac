//! The value-oracle model: objectives, query accounting, and an exhaustive
//! reference optimum for small instances.
//!
//! Algorithms never touch an [`Objective`] directly. They receive a
//! [`CountingOracle`], and every value they learn flows through one of its
//! counted methods, so `ledger.queries()` is exactly the number of oracle
//! evaluations the algorithm made.
//!
//! Objectives may keep incremental state for a growing base set (a
//! [`Cursor`]); this is what makes `f(A ∪ C)` cost `O(|C|)` work instead of
//! `O(|A ∪ C|)`. Maintaining a cursor never counts as a query and never
//! reveals a value.

use itertools::Itertools;

use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};

/// Largest ground set `brute_force_opt` will enumerate by default.
pub const BRUTE_FORCE_MAX_N: usize = 20;

/// A normalized, monotone, submodular set function over `0..ground_size()`.
///
/// `State` caches whatever the objective needs to answer `f(B ∪ X)` quickly
/// for a base set `B` that is extended over time. Elements passed to
/// `value_with` or `insert` may already belong to the base set or repeat;
/// implementations must treat arguments with set semantics.
pub trait Objective: Sync {
    type State: Clone + Send;

    fn ground_size(&self) -> usize;

    /// Incremental state for the empty base set.
    fn empty_state(&self) -> Self::State;

    /// Value of the base set.
    fn state_value(&self, state: &Self::State) -> f64;

    /// Value of `base ∪ extra`. The base set is left unchanged; `state` is
    /// mutable only so implementations can reuse scratch buffers.
    fn value_with(&self, state: &mut Self::State, extra: &[Element]) -> f64;

    /// Extends the base set by `extra`.
    fn insert(&self, state: &mut Self::State, extra: &[Element]);

    /// Value of an arbitrary set, computed from scratch.
    fn evaluate(&self, set: &[Element]) -> f64 {
        let mut state = self.empty_state();
        self.insert(&mut state, set);
        self.state_value(&state)
    }

    /// Value of the base set for reporting or instrumentation, as opposed
    /// to an oracle query. Objectives that observe their queries override
    /// this to stay silent.
    fn measure_state(&self, state: &Self::State) -> f64 {
        self.state_value(state)
    }

    /// Like [`Objective::evaluate`], but through [`Objective::measure_state`].
    fn measure(&self, set: &[Element]) -> f64 {
        let mut state = self.empty_state();
        self.insert(&mut state, set);
        self.measure_state(&state)
    }
}

/// Per-run accounting of oracle queries, stored elements, and passes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QueryLedger {
    queries: u64,
    refresh_queries: u64,
    peak_stored: usize,
    passes: u32,
}

impl QueryLedger {
    /// Total oracle evaluations, refresh queries included.
    pub fn queries(&self) -> u64 {
        self.queries
    }

    /// The subset of `queries` spent re-reading `f(A)` after a deletion.
    pub fn refresh_queries(&self) -> u64 {
        self.refresh_queries
    }

    pub fn peak_stored(&self) -> usize {
        self.peak_stored
    }

    pub fn passes(&self) -> u32 {
        self.passes
    }

    /// Records that the algorithm currently holds `stored` element identities.
    pub fn observe_stored(&mut self, stored: usize) {
        self.peak_stored = self.peak_stored.max(stored);
    }

    pub fn record_pass(&mut self) {
        self.passes += 1;
    }

    /// Folds the accounting of a follow-up phase into this ledger.
    pub fn absorb(&mut self, other: &QueryLedger) {
        self.queries += other.queries;
        self.refresh_queries += other.refresh_queries;
        self.peak_stored = self.peak_stored.max(other.peak_stored);
        self.passes += other.passes;
    }

    /// Like [`QueryLedger::absorb`], but for a phase that works on data
    /// already held in memory and so makes no passes over the stream.
    pub fn absorb_offline(&mut self, other: &QueryLedger) {
        self.queries += other.queries;
        self.refresh_queries += other.refresh_queries;
        self.peak_stored = self.peak_stored.max(other.peak_stored);
    }
}

/// Opaque incremental state for a base set held by an algorithm.
///
/// The value of the base set can only be read through a counted query.
pub struct Cursor<F: Objective> {
    state: F::State,
}

impl<F: Objective> Clone for Cursor<F> {
    fn clone(&self) -> Self {
        Cursor {
            state: self.state.clone(),
        }
    }
}

/// An objective paired with the ledger of a single run.
pub struct CountingOracle<'f, F: Objective> {
    f: &'f F,
    ledger: QueryLedger,
}

impl<'f, F: Objective> CountingOracle<'f, F> {
    /// Wraps `f`, checking `f(∅) = 0` with one setup evaluation that is not
    /// charged to the ledger.
    pub fn new(f: &'f F) -> Result<Self> {
        let empty = f.measure(&[]);
        if empty != 0.0 {
            return Err(Error::NotNormalized(empty));
        }
        Ok(CountingOracle {
            f,
            ledger: QueryLedger::default(),
        })
    }

    pub fn ground_size(&self) -> usize {
        self.f.ground_size()
    }

    pub fn ledger(&self) -> &QueryLedger {
        &self.ledger
    }

    pub fn ledger_mut(&mut self) -> &mut QueryLedger {
        &mut self.ledger
    }

    pub fn into_ledger(self) -> QueryLedger {
        self.ledger
    }

    fn check(&self, set: &[Element]) -> Result<()> {
        let n = self.f.ground_size();
        match set.iter().find(|e| e.index() >= n) {
            Some(e) => Err(Error::ElementOutOfRange {
                index: e.index(),
                n,
            }),
            None => Ok(()),
        }
    }

    /// `f(set)`, one query.
    pub fn query(&mut self, set: &[Element]) -> Result<f64> {
        self.check(set)?;
        self.ledger.queries += 1;
        Ok(self.f.evaluate(set))
    }

    /// A cursor positioned at the empty set.
    pub fn cursor(&self) -> Cursor<F> {
        Cursor {
            state: self.f.empty_state(),
        }
    }

    /// A cursor positioned at `base`. Uncounted.
    pub fn cursor_at(&self, base: &[Element]) -> Result<Cursor<F>> {
        let mut cursor = self.cursor();
        self.extend(&mut cursor, base)?;
        Ok(cursor)
    }

    /// Moves the cursor's base set to `base ∪ extra`. Uncounted.
    pub fn extend(&self, cursor: &mut Cursor<F>, extra: &[Element]) -> Result<()> {
        self.check(extra)?;
        self.f.insert(&mut cursor.state, extra);
        Ok(())
    }

    /// `f(base ∪ extra)`, one query.
    pub fn query_with(&mut self, cursor: &mut Cursor<F>, extra: &[Element]) -> Result<f64> {
        self.check(extra)?;
        self.ledger.queries += 1;
        Ok(self.f.value_with(&mut cursor.state, extra))
    }

    /// `f(base ∪ extra) - base_value`, one query. `base_value` must be the
    /// previously learned value of the cursor's base set.
    pub fn cached_marginal(
        &mut self,
        cursor: &mut Cursor<F>,
        base_value: f64,
        extra: &[Element],
    ) -> Result<f64> {
        Ok(self.query_with(cursor, extra)? - base_value)
    }

    /// `f(base)` without charging the ledger. For instrumentation only:
    /// algorithms must not branch on it.
    pub fn audit(&self, cursor: &Cursor<F>) -> f64 {
        self.f.measure_state(&cursor.state)
    }

    /// `f(base)`, one query charged as a refresh.
    pub fn refresh(&mut self, cursor: &Cursor<F>) -> f64 {
        self.ledger.queries += 1;
        self.ledger.refresh_queries += 1;
        self.f.state_value(&cursor.state)
    }
}

/// Exhaustive maximum of `f` over all sets of size at most `k`.
///
/// Refuses ground sets larger than `max_n`. Ties keep the first maximizer in
/// order of increasing size, then lexicographic order.
pub fn brute_force_opt_capped<F: Objective>(
    f: &F,
    k: usize,
    max_n: usize,
) -> Result<(ElementSet, f64)> {
    let n = f.ground_size();
    if n > max_n {
        return Err(Error::BruteForceCap { n, cap: max_n });
    }
    let mut best = (Vec::new(), 0.0_f64);
    for size in 1..=k.min(n) {
        for combo in (0..n).map(Element::from).combinations(size) {
            let v = f.measure(&combo);
            if v > best.1 {
                best = (combo, v);
            }
        }
    }
    Ok((best.0.into_iter().collect(), best.1))
}

pub fn brute_force_opt<F: Objective>(f: &F, k: usize) -> Result<(ElementSet, f64)> {
    brute_force_opt_capped(f, k, BRUTE_FORCE_MAX_N)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::elements;
    use crate::objectives::Modular;

    #[test]
    fn counted_paths_increment_by_one() {
        let f = Modular::new(vec![1.0, 2.0, 3.0]);
        let mut o = CountingOracle::new(&f).unwrap();
        assert_eq!(o.ledger().queries(), 0);
        assert_eq!(o.query(&elements([0u32, 2])).unwrap(), 4.0);
        assert_eq!(o.ledger().queries(), 1);

        let mut cur = o.cursor_at(&elements([1u32])).unwrap();
        assert_eq!(o.ledger().queries(), 1);
        assert_eq!(
            o.cached_marginal(&mut cur, 2.0, &elements([2u32])).unwrap(),
            3.0
        );
        assert_eq!(o.ledger().queries(), 2);
        assert_eq!(o.refresh(&cur), 2.0);
        assert_eq!(o.ledger().queries(), 3);
        assert_eq!(o.ledger().refresh_queries(), 1);
    }

    #[test]
    fn out_of_range_is_rejected_without_charge() {
        let f = Modular::new(vec![1.0; 4]);
        let mut o = CountingOracle::new(&f).unwrap();
        let err = o.query(&elements([1u32, 4])).unwrap_err();
        assert!(matches!(err, Error::ElementOutOfRange { index: 4, n: 4 }));
        assert_eq!(o.ledger().queries(), 0);
    }

    #[test]
    fn brute_force_cap_and_empty_budget() {
        let f = Modular::new(vec![1.0; 21]);
        assert!(matches!(
            brute_force_opt(&f, 2),
            Err(Error::BruteForceCap { n: 21, cap: 20 })
        ));
        let g = Modular::new(vec![3.0, 1.0]);
        let (s, v) = brute_force_opt(&g, 0).unwrap();
        assert!(s.is_empty());
        assert_eq!(v, 0.0);
    }

    #[test]
    fn ledger_absorb_sums_counts() {
        let mut a = QueryLedger::default();
        a.observe_stored(5);
        a.record_pass();
        let mut b = QueryLedger::default();
        b.observe_stored(3);
        b.record_pass();
        b.record_pass();
        a.absorb(&b);
        assert_eq!(a.passes(), 3);
        assert_eq!(a.peak_stored(), 5);
    }
}
