//! # qcorr
//!
//! Quantum correlation measures on small multi-qubit systems and numerical
//! checks of the monogamy relations between entanglement of formation (EOF)
//! and quantum discord.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`state`] | layouts, pure states, density matrices, partial trace/transpose, purification |
//! | [`measures`] | entropy, mutual information, `J`, discord, EOF, negativity |
//! | [`monogamy`] | correlation ledgers, conservation residuals, entropy-inequality balance |
//! | [`dqc1`] | one-clean-qubit states, trace readout, redistribution ledger |
//!
//! Subsystem indices are row-major with the leftmost label most significant.
//! Discord and classical correlation always measure the *second* named
//! subsystem: `quantum_discord(rho, "A", "B", ..)` is `delta(A|B)` with the
//! measurement on `B`.

pub mod dqc1;
pub mod error;
pub mod io;
pub mod linalg;
pub mod measures;
pub mod monogamy;
pub mod optimize;
pub mod random;
pub mod state;

pub use error::{QcorrError, Result};
pub use measures::{MeasureResult, Measurement, OptimizerConfig};
pub use state::{DensityMatrix, PureState, QuantumState, SubsystemLayout, UnitaryMatrix};
