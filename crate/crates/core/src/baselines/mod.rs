//! Reference algorithms used to normalize and compare results.

mod greedy;
mod stochastic;

pub use greedy::run_greedy;
pub use stochastic::{run_stochastic_greedy, sample_size};
