//! Entropic and correlation measures. All values are in bits.

pub mod discord;
pub mod entropy;
pub mod eof;
pub mod measurement;
pub mod negativity;

pub use discord::{
    classical_correlation, correlation_split, default_restarts, measured_conditional_entropy,
    quantum_discord, MeasureResult, OptimizerConfig,
};
pub use entropy::{
    binary_entropy, conditional_entropy, entropy_bits, marginal_entropy, mutual_information,
    von_neumann_entropy,
};
pub use eof::{
    concurrence, eof_from_concurrence, eof_pure_bipartite, eof_two_qubit, eof_via_koashi_winter,
};
pub use measurement::Measurement;
pub use negativity::negativity;
