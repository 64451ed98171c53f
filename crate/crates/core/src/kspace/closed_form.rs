//! Closed-form characteristic functions and the relations derived from them.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use crate::coin::{BlochAngles, CoinKind};
use crate::entropy::CLAMP_TOL;
use crate::error::{QwError, Result};

/// `(√2 - 1)/4`, the local-state delocalization factor.
pub fn local_f() -> f64 {
    (SQRT_2 - 1.0) / 4.0
}

/// `3 - 2√2`.
pub fn local_delta_scale() -> f64 {
    3.0 - 2.0 * SQRT_2
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileClass {
    Local,
    Delocalized { f: f64 },
}

/// `Δ̄(α, β)` in closed form.
///
/// Hadamard: local `(3-2√2)[1 + sin2α cosβ]`, delocalized
/// `½(1-4f)²[cosα + sinα cosβ]² + (4f)²[sinα sinβ]²`.
/// Fourier: local `(3-2√2)[1 - sin2α sinβ]`, delocalized
/// `½(1-4f)²[cosα - sinα sinβ]² + (4f)²[sinα cosβ]²`.
pub fn closed_delta(coin: CoinKind, class: ProfileClass, angles: BlochAngles) -> Result<f64> {
    let (sa, ca) = angles.alpha().sin_cos();
    let (sb, cb) = angles.beta().sin_cos();
    match class {
        ProfileClass::Local => {
            let s2a = (2.0 * angles.alpha()).sin();
            Ok(local_delta_scale()
                * match coin {
                    CoinKind::Hadamard => 1.0 + s2a * cb,
                    CoinKind::Fourier => 1.0 - s2a * sb,
                })
        }
        ProfileClass::Delocalized { f } => {
            if !(-CLAMP_TOL..=0.25 + CLAMP_TOL).contains(&f) {
                return Err(QwError::domain(format!(
                    "delocalization factor f = {f} outside [0, 1/4]"
                )));
            }
            let (x, y) = match coin {
                CoinKind::Hadamard => (ca + sa * cb, sa * sb),
                CoinKind::Fourier => (ca - sa * sb, sa * cb),
            };
            let g = 1.0 - 4.0 * f;
            Ok(0.5 * g * g * x * x + 16.0 * f * f * y * y)
        }
    }
}

/// Delocalized characteristic in the limit of infinite dispersion:
/// Hadamard `f → 0`, Fourier `f → 1/4`.
pub fn limit_delta(coin: CoinKind, angles: BlochAngles) -> f64 {
    let f = match coin {
        CoinKind::Hadamard => 0.0,
        CoinKind::Fourier => 0.25,
    };
    closed_delta(coin, ProfileClass::Delocalized { f }, angles)
        .expect("limit factors are in range")
}

/// Interpolated Hadamard-Gaussian factor
/// `0.0365 {π/2 - arctan[3.937(σ₀ - 0.8)]}`.
pub fn f_interpolation(sigma0: f64) -> f64 {
    0.0365 * (FRAC_PI_2 - (3.937 * (sigma0 - 0.8)).atan())
}

/// `β = arccos(-cot α)`: zero of the large-dispersion Hadamard
/// characteristic. The mirror `-β` is also a solution; for the Fourier coin
/// the shifted angle `β - π/2` plays the same role in the shifted form.
pub fn max_entanglement_beta(alpha: f64) -> Result<f64> {
    let cot = alpha.cos() / alpha.sin();
    if !cot.is_finite() || cot.abs() > 1.0 + 1e-12 {
        return Err(QwError::domain(format!(
            "|cot alpha| > 1 at alpha = {alpha}: no maximal-entanglement azimuth"
        )));
    }
    Ok((-cot.clamp(-1.0, 1.0)).acos())
}
