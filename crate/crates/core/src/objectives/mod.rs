//! Concrete objectives: graph coverage, concave-model revenue, the
//! lower-bound pair, and an additive function for tests.

mod adversarial;
mod coverage;
pub mod generate;
mod graph;
mod modular;
mod revenue;

pub use adversarial::{adversarial_eval, AdversarialInstance, AdversarialState, Variant};
pub use coverage::{max_cover_eval, CoverState, MaxCover};
pub use graph::{load_edge_list, GraphInstance};
pub use modular::{Modular, ModularState};
pub use revenue::{
    draw_exponents, make_revenue_instance, revenue_eval, RevenueInstance, RevenueState,
};
