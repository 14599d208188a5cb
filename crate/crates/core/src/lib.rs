//! Exact sudden-quench dynamics of the periodic transverse-field XY chain.
//!
//! The chain is prepared in the ground state at field `h0` and evolved under
//! field `h1`. Nearest-neighbour correlators follow from closed-form momentum
//! sums ([`correlators`]); the two-site reduced state is an X-state from which
//! the steered coherences and the magic resource quantifier are computed
//! ([`measures`]). [`oracle`] holds brute-force cross-checks (exact
//! diagonalisation, steered-ensemble coherence, Pauli traces) and [`sweeps`]
//! drives parameter grids, time series and revival-time fits.

pub mod correlators;
pub mod error;
pub mod measures;
pub mod model;
pub mod oracle;
pub mod sum;
pub mod sweeps;

pub use correlators::{correlators_nn, CorrelatorSet, QuenchCorrelators};
pub use error::{Error, Result};
pub use measures::{Measure, MeasureRecord, XState};
pub use model::{dispersion, ModelParams, MomentumGrid, MomentumMode};
