//! Single-pass streaming maximization of monotone submodular functions under
//! a cardinality constraint, with one oracle query per block of `c` stream
//! elements.
//!
//! Every algorithm reads its objective through a [`CountingOracle`], so the
//! returned [`QueryLedger`] is an exact account of the queries it made.
//!
//! ```
//! use qstream::objectives::{GraphInstance, MaxCover};
//! use qstream::quickstream::{run_quickstream, QuickStreamConfig};
//! use qstream::element::elements;
//!
//! let star = GraphInstance::from_edges(4, [(0, 1), (0, 2), (0, 3)]);
//! let f = MaxCover::new(&star);
//! let run = run_quickstream(&f, &elements([1u32, 2, 3, 0]), QuickStreamConfig::new(2, 1, 0.1)).unwrap();
//! assert_eq!(run.outcome.value, 3.0);
//! assert!(run.outcome.ledger.queries() <= 5);
//! ```

pub mod baselines;
pub mod boostratio;
pub mod element;
pub mod error;
pub mod harness;
pub mod objectives;
pub mod oracle;
pub mod outcome;
pub mod quickstream;

pub use element::{Element, ElementSet};
pub use error::{Error, Result};
pub use oracle::{brute_force_opt, CountingOracle, Objective, QueryLedger};
pub use outcome::RunOutcome;
