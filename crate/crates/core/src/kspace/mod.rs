//! Momentum-space engine: initial amplitudes, the coin spectrum, exact and
//! time-averaged coin moments, and the closed-form characteristic functions.

pub mod amplitudes;
pub mod asymptotic;
pub mod closed_form;
pub mod quadrature;
pub mod spectrum;

pub use amplitudes::{k_amplitudes, KAmplitudes};
pub use asymptotic::{
    asymptotic_moments, characteristic, evolve_k_moments, extract_f, AsymptoticKernel,
    AsymptoticMoments, CharacteristicResult, DelocalizationFactor,
};
pub use closed_form::{
    closed_delta, f_interpolation, limit_delta, local_f, max_entanglement_beta, ProfileClass,
};
pub use quadrature::{quadrature, QuadratureSpec};
pub use spectrum::{coin_spectrum, dispersion, CoinSpectrum};
