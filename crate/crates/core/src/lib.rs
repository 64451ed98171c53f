//! Coin-position entanglement in one-dimensional discrete-time quantum walks.
//!
//! Two engines compute the same quantity by independent routes:
//!
//! * [`lattice`] evolves the walker site by site and reads the reduced coin
//!   state off the amplitudes at each step.
//! * [`kspace`] diagonalizes the step operator in momentum space, giving
//!   both the exact `A(t)`, `B(t)` and their long-time averages.
//!
//! [`analysis`] builds Bloch-sphere sweeps, averages and power-law fits on
//! top of both.

pub mod analysis;
pub mod coin;
pub mod entropy;
pub mod error;
pub mod kspace;
pub mod lattice;
pub mod reduce;

pub use coin::{spin_from_angles, BlochAngles, CoinKind, CoinMoments, CoinOperator, Spinor};
pub use entropy::{entropy_from_delta, entropy_from_moments};
pub use error::{QwError, Result};
pub use lattice::{InitialProfile, WalkerState};
