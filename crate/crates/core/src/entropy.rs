//! Spin-position entanglement entropy from the reduced coin state.
//!
//! `ρ_C` is never built as a matrix: its eigenvalues follow from the two
//! moments `A` and `B`, and in the long-time limit from the characteristic
//! value `Δ = (λ₊ - λ₋)²`.

use crate::coin::CoinMoments;
use crate::error::{QwError, Result};

/// Slack allowed on eigenvalues before they are clamped into `[0, 1]`.
pub const CLAMP_TOL: f64 = 1e-9;

/// `-p log₂ p - (1-p) log₂ (1-p)` with `0·log 0 = 0`.
pub fn binary_entropy(p: f64) -> f64 {
    let q = 1.0 - p;
    let term = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
    (term(p) + term(q)).clamp(0.0, 1.0)
}

/// Von Neumann entropy (bits) of `ρ_C` from its moments.
///
/// `λ± = 1/2 ± sqrt(1/4 - A(1-A) + |B|²)`. Eigenvalues drifting outside
/// `[0, 1]` by less than [`CLAMP_TOL`] are clamped; anything larger is an
/// inconsistent set of moments.
pub fn entropy_from_moments(m: &CoinMoments) -> Result<f64> {
    let disc = 0.25 - m.a * (1.0 - m.a) + m.b.norm_sqr();
    if !disc.is_finite() || disc < -CLAMP_TOL {
        return Err(QwError::domain(format!(
            "negative eigenvalue discriminant {disc:.3e} (A = {}, |B| = {})",
            m.a,
            m.b.norm()
        )));
    }
    let root = disc.max(0.0).sqrt();
    let lambda_minus = 0.5 - root;
    if lambda_minus < -CLAMP_TOL {
        return Err(QwError::domain(format!(
            "reduced coin state has eigenvalue {lambda_minus:.3e} < 0 (A = {}, |B| = {})",
            m.a,
            m.b.norm()
        )));
    }
    Ok(binary_entropy((0.5 + root).clamp(0.0, 1.0)))
}

/// Entropy from the characteristic value, `λ̄± = (1 ± sqrt(Δ))/2`.
pub fn entropy_from_delta(delta: f64) -> Result<f64> {
    if !delta.is_finite() || !(-CLAMP_TOL..=1.0 + CLAMP_TOL).contains(&delta) {
        return Err(QwError::domain(format!(
            "characteristic value {delta} outside [0, 1]"
        )));
    }
    let d = delta.clamp(0.0, 1.0);
    Ok(binary_entropy(0.5 * (1.0 + d.sqrt())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn moments(a: f64, b: Complex64) -> CoinMoments {
        CoinMoments { a, b }
    }

    #[test]
    fn maximally_mixed_and_pure() {
        let s = entropy_from_moments(&moments(0.5, Complex64::new(0.0, 0.0))).unwrap();
        assert!((s - 1.0).abs() < 1e-15);
        let s = entropy_from_moments(&moments(1.0, Complex64::new(0.0, 0.0))).unwrap();
        assert_eq!(s, 0.0);
    }

    #[test]
    fn two_step_hadamard_moments() {
        // eigenvalues {3/4, 1/4}
        let expected = -(0.75f64 * 0.75f64.log2() + 0.25 * 0.25f64.log2());
        let s = entropy_from_moments(&moments(0.5, Complex64::new(0.25, 0.0))).unwrap();
        assert!((s - expected).abs() < 1e-15);
        assert!((s - 0.8113).abs() < 1e-4);
    }

    #[test]
    fn delta_endpoints() {
        assert!((entropy_from_delta(0.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(entropy_from_delta(1.0).unwrap(), 0.0);
        assert!((entropy_from_delta(-5e-10).unwrap() - 1.0).abs() < 1e-15);
        assert!(entropy_from_delta(-1e-6).is_err());
        assert!(entropy_from_delta(1.0 + 1e-6).is_err());
        assert!(entropy_from_delta(f64::NAN).is_err());
    }

    #[test]
    fn local_hadamard_minimum() {
        let delta = 2.0 * (3.0 - 2.0 * 2f64.sqrt());
        assert!((delta - 0.343146).abs() < 1e-6);
        let s = entropy_from_delta(delta).unwrap();
        assert!((s - 0.736).abs() < 5e-4, "{s}");
    }

    #[test]
    fn inconsistent_moments_rejected() {
        // |B|^2 > A(1-A): a negative eigenvalue
        assert!(entropy_from_moments(&moments(0.5, Complex64::new(0.6, 0.0))).is_err());
        // separable state sits exactly on the boundary
        let s = entropy_from_moments(&moments(0.5, Complex64::new(0.5, 0.0))).unwrap();
        assert!(s.abs() < 1e-12);
    }

    fn valid_moments() -> impl Strategy<Value = CoinMoments> {
        (0.0f64..=1.0, 0.0f64..=1.0, -std::f64::consts::PI..std::f64::consts::PI).prop_map(
            |(a, r, phase)| {
                let bmax = (a * (1.0 - a)).sqrt();
                CoinMoments {
                    a,
                    b: Complex64::from_polar(r * bmax, phase),
                }
            },
        )
    }

    proptest! {
        #[test]
        fn moments_and_delta_agree(m in valid_moments()) {
            let s1 = entropy_from_moments(&m).unwrap();
            let s2 = entropy_from_delta(m.characteristic_delta()).unwrap();
            prop_assert!((s1 - s2).abs() < 1e-12 || (s1 < 1e-6 && (s1 - s2).abs() < 1e-7));
            prop_assert!((0.0..=1.0).contains(&s1));
        }

        #[test]
        fn phase_of_b_is_irrelevant(m in valid_moments(), phi in -10.0f64..10.0) {
            let rotated = CoinMoments { a: m.a, b: m.b * Complex64::from_polar(1.0, phi) };
            let s1 = entropy_from_moments(&m).unwrap();
            let s2 = entropy_from_moments(&rotated).unwrap();
            prop_assert!((s1 - s2).abs() < 1e-12);
        }

        #[test]
        fn symmetric_under_a_flip(m in valid_moments()) {
            let flipped = CoinMoments { a: 1.0 - m.a, b: m.b };
            let s1 = entropy_from_moments(&m).unwrap();
            let s2 = entropy_from_moments(&flipped).unwrap();
            prop_assert!((s1 - s2).abs() < 1e-12);
        }
    }
}
