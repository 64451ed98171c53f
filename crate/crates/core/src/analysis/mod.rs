//! Experiments over the Bloch sphere: sweeps, averages, comparisons between
//! the lattice and the asymptotic engine, and decay fits.

pub mod fit;
pub mod grid;
pub mod sweep;

pub use fit::{fit_power_law, Offset, PowerLawFit};
pub use grid::{paper_grid, SweepGrid};
pub use sweep::{
    asymptote_offset, average_trace, compare, decay_points, fit_decay, sweep_asymptotic,
    sweep_closed_form, sweep_simulated, ComparisonReport, DecayQuantity, ProfileFamily,
    SweepResult,
};
