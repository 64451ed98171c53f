//! Momentum-space initial amplitudes `ã_k(0), b̃_k(0) = Σ_j e^{-ikj} (a, b)(j, 0)`.
//!
//! Every profile here is a product state, so the amplitude pair is a real
//! envelope `g(k)` times the spin.

use std::f64::consts::PI;

use crate::coin::Spinor;
use crate::error::{QwError, Result};
use crate::lattice::InitialProfile;

/// Below this `|k|` the Dirichlet kernel is replaced by its limit.
const DIRICHLET_LIMIT_K: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Envelope {
    Constant,
    /// `prefactor · exp(-k²σ₀²)`
    Gaussian { sigma0: f64, prefactor: f64 },
    /// `sin((2a+1)k/2) / sin(k/2) / sqrt(2a+1)`
    Dirichlet { a: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KAmplitudes {
    profile: InitialProfile,
    spin: Spinor,
    envelope: Envelope,
}

pub fn k_amplitudes(profile: InitialProfile, spin: Spinor) -> Result<KAmplitudes> {
    profile.validate()?;
    if !spin.is_normalized(1e-12) {
        return Err(QwError::domain("spin is not normalized"));
    }
    let envelope = match profile {
        InitialProfile::Local => Envelope::Constant,
        InitialProfile::Rectangular { a } => Envelope::Dirichlet { a },
        InitialProfile::Gaussian { sigma0 } => Envelope::Gaussian {
            sigma0,
            prefactor: gaussian_prefactor(sigma0),
        },
    };
    Ok(KAmplitudes {
        profile,
        spin,
        envelope,
    })
}

/// `(8πσ₀²)^{1/4} / sqrt(erf(√2 π σ₀))`.
///
/// The error-function factor renormalizes the continuum transform on the
/// finite Brillouin zone; it differs from one by less than 1e-9 once
/// `σ₀ >= 1`.
pub fn gaussian_prefactor(sigma0: f64) -> f64 {
    let z = std::f64::consts::SQRT_2 * PI * sigma0;
    (8.0 * PI * sigma0 * sigma0).powf(0.25) / libm::erf(z).sqrt()
}

/// `Σ_{j=-a}^{a} e^{-ikj} / sqrt(2a+1)` in closed form.
pub fn dirichlet_envelope(a: u32, k: f64) -> f64 {
    let n = 2.0 * a as f64 + 1.0;
    if k.abs() < DIRICHLET_LIMIT_K {
        return n.sqrt();
    }
    (0.5 * n * k).sin() / (0.5 * k).sin() / n.sqrt()
}

impl KAmplitudes {
    pub fn profile(&self) -> InitialProfile {
        self.profile
    }

    pub fn spin(&self) -> Spinor {
        self.spin
    }

    /// Real envelope `g(k)`.
    #[inline]
    pub fn envelope(&self, k: f64) -> f64 {
        match self.envelope {
            Envelope::Constant => 1.0,
            Envelope::Gaussian { sigma0, prefactor } => prefactor * (-(k * sigma0).powi(2)).exp(),
            Envelope::Dirichlet { a } => dirichlet_envelope(a, k),
        }
    }

    #[inline]
    pub fn at(&self, k: f64) -> Spinor {
        self.spin.scale_real(self.envelope(k))
    }

    /// Smallest node count that resolves the envelope's oscillations.
    pub fn min_quadrature_points(&self) -> usize {
        match self.envelope {
            Envelope::Dirichlet { a } => 128 * (2 * a as usize + 1),
            _ => 0,
        }
    }
}
