//! Brute-force references for the closed-form paths.
//!
//! - [`ed`]: exact diagonalisation of the periodic chain, built directly from
//!   the spin Hamiltonian.
//! - [`ensemble`]: steered coherence from explicit measurement, conditioning
//!   and basis rotation on a dense two-qubit density matrix, and the magic
//!   quantifier from all sixteen Pauli traces.

pub mod ed;
pub mod ensemble;

pub use ed::{apply_hamiltonian, ed_build, ed_two_site_rdm, EdState, SpinCorrelators};
pub use ensemble::{mrq_pauli, random_xstate, sqc_ensemble};
