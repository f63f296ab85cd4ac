//! Experiment plumbing: configuration, metric rows, CSV output, the
//! adversarial distinguishing experiment, and the verification suite.

mod adversarial;
mod config;
mod experiment;
mod metrics;
pub mod verify;

pub use adversarial::{adversarial_trials, AdversarialReport};
pub use config::{Algorithm, ExperimentConfig, ObjectiveKind};
pub use experiment::{run_algorithm, run_experiment, run_on_objective, stream_order};
pub use metrics::{emit_csv, format_sig6, normalize, read_csv, summarize, write_csv, RunMetrics};
pub use verify::{verify_suite, VerifyOptions, VerifyReport};
