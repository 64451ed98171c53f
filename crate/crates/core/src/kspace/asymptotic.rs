//! Coin moments from the spectral decomposition of `U_k`.
//!
//! `Φ_k(t) = Σ± λ±ᵗ c± Φ±` with `c± = ⟨Φ±|Φ_k(0)⟩`. Time-averaging drops
//! the cross terms, leaving the projections onto each eigenvector:
//!
//! ```text
//! Ā = ∫ dk/2π Σ± |c±|² |Φ±_up|²
//! B̄ = ∫ dk/2π Σ± |c±|² Φ±_up (Φ±_down)*
//! ```
//!
//! The same construction serves both coins.

use num_complex::Complex64;

use crate::coin::{spin_from_angles, BlochAngles, CoinKind, CoinMoments, Spinor};
use crate::entropy::{entropy_from_delta, CLAMP_TOL};
use crate::error::{QwError, Result};
use crate::kspace::amplitudes::{k_amplitudes, KAmplitudes};
use crate::kspace::quadrature::{integrate_periodic, QuadratureSpec};
use crate::kspace::spectrum::coin_spectrum;
use crate::lattice::InitialProfile;

/// Long-time average of the reduced coin moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticMoments {
    pub a_bar: f64,
    pub b_bar: Complex64,
}

impl AsymptoticMoments {
    pub fn as_coin_moments(&self) -> CoinMoments {
        CoinMoments {
            a: self.a_bar,
            b: self.b_bar,
        }
    }
}

/// `Δ̄` and the entropy it implies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicResult {
    pub delta: f64,
    pub entropy: f64,
}

/// `Δ̄ = (λ̄₊ - λ̄₋)² = 1 - 4[Ā(1-Ā) - |B̄|²]`, clamped into `[0, 1]`.
pub fn characteristic(m: &AsymptoticMoments) -> Result<CharacteristicResult> {
    let raw = m.as_coin_moments().characteristic_delta();
    if !raw.is_finite() || !(-CLAMP_TOL..=1.0 + CLAMP_TOL).contains(&raw) {
        return Err(QwError::domain(format!(
            "characteristic value {raw:.3e} outside [0, 1] (A = {}, B = {})",
            m.a_bar, m.b_bar
        )));
    }
    let delta = raw.clamp(0.0, 1.0);
    Ok(CharacteristicResult {
        delta,
        entropy: entropy_from_delta(delta)?,
    })
}

fn quad_for(amps: &KAmplitudes, quad: &QuadratureSpec) -> QuadratureSpec {
    quad.with_min_points(amps.min_quadrature_points())
}

/// `A(t)`, `B(t)` by quadrature over the exactly evolved k-space state.
pub fn evolve_k_moments(
    profile: InitialProfile,
    spin: Spinor,
    coin: CoinKind,
    t: u64,
    quad: &QuadratureSpec,
) -> Result<CoinMoments> {
    let amps = k_amplitudes(profile, spin)?;
    // e^{2iωt} cross terms need roughly 2t resolved harmonics
    let spec = quad_for(&amps, quad).with_min_points(32 * (t as usize + 1));
    let tf = t as f64;
    let [a, b] = integrate_periodic(
        |k| {
            let phi0 = amps.at(k);
            let s = coin_spectrum(coin, k)?;
            let mut phi = Spinor::ZERO;
            for (lambda, v) in s.eigenvalues.iter().zip(&s.eigenvectors) {
                let phase = Complex64::from_polar(1.0, tf * lambda.arg());
                phi = phi + v.scale(phase * v.inner(&phi0));
            }
            Ok([
                Complex64::new(phi.up.norm_sqr(), 0.0),
                phi.up * phi.down.conj(),
            ])
        },
        &spec,
    )?;
    Ok(CoinMoments { a: a.re, b })
}

/// `Ā`, `B̄` by spectral projection and quadrature.
pub fn asymptotic_moments(
    profile: InitialProfile,
    spin: Spinor,
    coin: CoinKind,
    quad: &QuadratureSpec,
) -> Result<AsymptoticMoments> {
    let amps = k_amplitudes(profile, spin)?;
    let spec = quad_for(&amps, quad);
    let [a, b] = integrate_periodic(
        |k| {
            let phi0 = amps.at(k);
            let s = coin_spectrum(coin, k)?;
            let mut a = 0.0;
            let mut b = Complex64::new(0.0, 0.0);
            for v in &s.eigenvectors {
                let weight = v.inner(&phi0).norm_sqr();
                a += weight * v.up.norm_sqr();
                b += weight * v.up * v.down.conj();
            }
            Ok([Complex64::new(a, 0.0), b])
        },
        &spec,
    )?;
    Ok(AsymptoticMoments { a_bar: a.re, b_bar: b })
}

/// Spin-independent kernel of the asymptotic moments for one profile.
///
/// `Ā` and `B̄` are quadratic forms in the spin:
/// `Ā = s† M_A s`, `B̄ = s† M_B s` with
/// `M_X = ∫ dk/2π g(k)² Σ± x± Φ± Φ±†`. Integrating the two 2×2 kernels once
/// makes every further spin state an O(1) evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticKernel {
    coin: CoinKind,
    profile: InitialProfile,
    m_a: [[Complex64; 2]; 2],
    m_b: [[Complex64; 2]; 2],
}

impl AsymptoticKernel {
    pub fn new(profile: InitialProfile, coin: CoinKind, quad: &QuadratureSpec) -> Result<Self> {
        let amps = k_amplitudes(profile, Spinor::up())?;
        let spec = quad_for(&amps, quad);
        let flat = integrate_periodic::<8, _>(
            |k| {
                let g2 = amps.envelope(k).powi(2);
                let s = coin_spectrum(coin, k)?;
                let mut out = [Complex64::new(0.0, 0.0); 8];
                for v in &s.eigenvectors {
                    let wa = g2 * v.up.norm_sqr();
                    let wb = v.up * v.down.conj() * g2;
                    let p = [
                        v.up * v.up.conj(),
                        v.up * v.down.conj(),
                        v.down * v.up.conj(),
                        v.down * v.down.conj(),
                    ];
                    for i in 0..4 {
                        out[i] += p[i] * wa;
                        out[4 + i] += p[i] * wb;
                    }
                }
                Ok(out)
            },
            &spec,
        )?;
        Ok(Self {
            coin,
            profile,
            m_a: [[flat[0], flat[1]], [flat[2], flat[3]]],
            m_b: [[flat[4], flat[5]], [flat[6], flat[7]]],
        })
    }

    pub fn coin(&self) -> CoinKind {
        self.coin
    }

    pub fn profile(&self) -> InitialProfile {
        self.profile
    }

    pub fn moments(&self, spin: &Spinor) -> AsymptoticMoments {
        let form = |m: &[[Complex64; 2]; 2]| {
            let s = [spin.up, spin.down];
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..2 {
                for j in 0..2 {
                    acc += s[i].conj() * m[i][j] * s[j];
                }
            }
            acc
        };
        AsymptoticMoments {
            a_bar: form(&self.m_a).re,
            b_bar: form(&self.m_b),
        }
    }

    pub fn characteristic(&self, angles: BlochAngles) -> Result<CharacteristicResult> {
        characteristic(&self.moments(&spin_from_angles(angles)))
    }
}

/// Delocalization factor `f` of the closed-form characteristic functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelocalizationFactor {
    pub f: f64,
    pub coin: CoinKind,
    pub profile: InitialProfile,
}

impl DelocalizationFactor {
    /// `f·σ₀²` for Gaussian profiles, `f·a` for rectangles, `f` otherwise.
    pub fn epsilon(&self) -> f64 {
        match self.profile {
            InitialProfile::Gaussian { sigma0 } => self.f * sigma0 * sigma0,
            InitialProfile::Rectangular { a } if a > 0 => self.f * a as f64,
            _ => self.f,
        }
    }
}

/// Inverts `Δ̄(α = 0) = ½(1 - 4f)²` on the branch `f <= 1/4`.
pub fn extract_f(
    coin: CoinKind,
    profile: InitialProfile,
    quad: &QuadratureSpec,
) -> Result<DelocalizationFactor> {
    let m = asymptotic_moments(profile, Spinor::up(), coin, quad)?;
    let delta = characteristic(&m)?.delta;
    f_from_polar_delta(delta).map(|f| DelocalizationFactor { f, coin, profile })
}

pub(crate) fn f_from_polar_delta(delta: f64) -> Result<f64> {
    let twice = 2.0 * delta;
    if twice > 1.0 + CLAMP_TOL {
        return Err(QwError::domain(format!(
            "2Δ(α=0) = {twice} exceeds 1; no delocalization factor"
        )));
    }
    Ok((1.0 - twice.min(1.0).sqrt()) / 4.0)
}
