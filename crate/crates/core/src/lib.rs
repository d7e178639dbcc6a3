//! Discrete-time quantum walk on the line, with the coin treated as an open
//! two-level system exchanging energy with the position lattice.
//!
//! The crate is organized around four layers:
//!
//! * [`walk`] — initial states and the unitary evolution (coin rotation
//!   followed by the conditional shift), kept as a dense pair of complex
//!   amplitude arrays over a contiguous position window.
//! * [`reduced`] — the coin's reduced density matrix obtained by tracing out
//!   position, plus its Bloch vector, spectrum, and von Neumann entropy.
//! * [`thermo`] — the thermodynamic frame: entanglement Hamiltonian,
//!   effective temperature, equilibrium state, internal energy, heat, and
//!   generated entropy computed both by the entropy balance and by relative
//!   entropy to the equilibrium state.
//! * [`harness`] — experiment configurations, CSV time series, parameter
//!   sweeps, figure reproduction, and a fast self-check suite. The `qwalk`
//!   binary is a thin CLI over this module.
//!
//! Entropies are reported in units of k_B (natural logarithm) and energies in
//! units of the scale ε of the entanglement Hamiltonian; both default to 1.

pub mod error;
pub mod harness;
pub mod mat2;
pub mod reduced;
#[cfg(test)]
pub(crate) mod testutil;
pub mod thermo;
pub mod walk;

pub use error::{Error, Result};
pub use mat2::Mat2;
pub use reduced::{reduce, BlochVector, QubitDensityMatrix};
pub use thermo::{
    alpha_of, heat_cumulative, relative_entropy, sgen_asymptotic, ThermoContext, TimeSeriesRecord,
};
pub use walk::{
    coin_matrix, evolve, ChiralitySpec, CoinParams, InitialStateSpec, StateFamily, WalkerState,
};
