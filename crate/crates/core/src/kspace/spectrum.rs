//! Dispersion relations and eigenpairs of the momentum-space step
//! operator `U_k = S_k · C` with `S_k = diag(e^{-ik}, e^{ik})`.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use num_complex::Complex64;

use crate::coin::{CoinKind, Spinor};
use crate::error::{QwError, Result};

pub const RESIDUAL_TOL: f64 = 1e-10;
const ORTHONORMAL_TOL: f64 = 1e-12;

/// Eigenpairs of `U_k`, ordered `[+, -]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinSpectrum {
    pub eigenvalues: [Complex64; 2],
    pub eigenvectors: [Spinor; 2],
}

/// `ω_k`: Hadamard `sin ω = sin k/√2` on `[-π/2, π/2]`; Fourier
/// `cos ω = cos k/√2` on `[π/4, 3π/4]`.
pub fn dispersion(coin: CoinKind, k: f64) -> f64 {
    match coin {
        CoinKind::Hadamard => (k.sin() * FRAC_1_SQRT_2).asin(),
        CoinKind::Fourier => (k.cos() * FRAC_1_SQRT_2).acos(),
    }
}

/// Row-major `U_k`.
pub fn step_operator(coin: CoinKind, k: f64) -> [[Complex64; 2]; 2] {
    let c = coin.operator().entries();
    let left = Complex64::from_polar(1.0, -k);
    let right = Complex64::from_polar(1.0, k);
    [
        [left * c[0][0], left * c[0][1]],
        [right * c[1][0], right * c[1][1]],
    ]
}

/// Closed-form eigenpairs, checked against `U_k`; falls back to a direct
/// 2×2 diagonalization when the check fails.
pub fn coin_spectrum(coin: CoinKind, k: f64) -> Result<CoinSpectrum> {
    let u = step_operator(coin, k);
    let closed = closed_form(coin, k);
    if spectrum_defect(&u, &closed) <= RESIDUAL_TOL {
        return Ok(closed);
    }
    let direct = diagonalize(&u, &closed.eigenvalues);
    let defect = spectrum_defect(&u, &direct);
    if defect <= RESIDUAL_TOL {
        Ok(direct)
    } else {
        Err(QwError::Numerical(format!(
            "eigen-decomposition of U_k failed for {coin} at k = {k}: defect {defect:.3e}"
        )))
    }
}

fn closed_form(coin: CoinKind, k: f64) -> CoinSpectrum {
    let omega = dispersion(coin, k);
    let e_mk = Complex64::from_polar(1.0, -k);
    match coin {
        CoinKind::Hadamard => {
            // λ± = ±e^{∓iω}; Φ± ∝ (e^{-ik}, √2 λ± - e^{-ik})
            let lp = Complex64::from_polar(1.0, -omega);
            let lm = -Complex64::from_polar(1.0, omega);
            let (cos_k, root) = (k.cos(), (1.0 + k.cos().powi(2)).sqrt());
            let vec = |lambda: Complex64, sign: f64| {
                let scale = FRAC_1_SQRT_2 / (1.0 + cos_k * cos_k - sign * cos_k * root).sqrt();
                Spinor::new(e_mk * scale, (SQRT_2 * lambda - e_mk) * scale)
            };
            CoinSpectrum {
                eigenvalues: [lp, lm],
                eigenvectors: [vec(lp, 1.0), vec(lm, -1.0)],
            }
        }
        CoinKind::Fourier => {
            // λ± = e^{∓iω}; Φ± ∝ (-e^{-ik}(sin k ± sqrt(1 + sin²k)), 1)
            let (sin_k, root) = (k.sin(), (1.0 + k.sin().powi(2)).sqrt());
            let vec = |sign: f64| {
                let scale =
                    FRAC_1_SQRT_2 / (1.0 + sin_k * sin_k + sign * sin_k * root).sqrt();
                Spinor::new(
                    -e_mk * ((sin_k + sign * root) * scale),
                    Complex64::new(scale, 0.0),
                )
            };
            CoinSpectrum {
                eigenvalues: [
                    Complex64::from_polar(1.0, -omega),
                    Complex64::from_polar(1.0, omega),
                ],
                eigenvectors: [vec(1.0), vec(-1.0)],
            }
        }
    }
}

/// Largest of: eigen-residuals, `| |λ| - 1 |`, and orthonormality errors
/// (the latter two rescaled so they share the residual tolerance).
pub fn spectrum_defect(u: &[[Complex64; 2]; 2], s: &CoinSpectrum) -> f64 {
    let mut worst = 0.0f64;
    for (lambda, v) in s.eigenvalues.iter().zip(&s.eigenvectors) {
        let uv = Spinor::new(
            u[0][0] * v.up + u[0][1] * v.down,
            u[1][0] * v.up + u[1][1] * v.down,
        );
        let residual = (uv - v.scale(*lambda)).norm_sqr().sqrt();
        worst = worst.max(residual);
        let scale = RESIDUAL_TOL / ORTHONORMAL_TOL;
        worst = worst.max((lambda.norm() - 1.0).abs() * scale);
        worst = worst.max((v.norm_sqr() - 1.0).abs() * scale);
    }
    let overlap = s.eigenvectors[0].inner(&s.eigenvectors[1]).norm();
    worst.max(overlap * RESIDUAL_TOL / ORTHONORMAL_TOL)
}

/// Direct eigen-decomposition of a 2×2 unitary, paired with `reference`
/// eigenvalues by proximity.
fn diagonalize(u: &[[Complex64; 2]; 2], reference: &[Complex64; 2]) -> CoinSpectrum {
    let [[a, b], [c, d]] = *u;
    let half_trace = 0.5 * (a + d);
    let det = a * d - b * c;
    let root = (half_trace * half_trace - det).sqrt();
    let mut lambdas = [half_trace + root, half_trace - root];
    if (lambdas[0] - reference[0]).norm() > (lambdas[1] - reference[0]).norm() {
        lambdas.swap(0, 1);
    }
    let vectors = lambdas.map(|l| {
        let v1 = Spinor::new(b, l - a);
        let v2 = Spinor::new(l - d, c);
        let v = if v1.norm_sqr() >= v2.norm_sqr() { v1 } else { v2 };
        let n = v.norm_sqr().sqrt();
        if n == 0.0 {
            // U is diagonal: the basis vector matching λ
            if (l - a).norm() <= (l - d).norm() {
                Spinor::up()
            } else {
                Spinor::down()
            }
        } else {
            v.scale_real(1.0 / n)
        }
    });
    // unit-modulus eigenvalues; renormalize away roundoff
    CoinSpectrum {
        eigenvalues: lambdas.map(|l| l / l.norm()),
        eigenvectors: vectors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn grid() -> impl Iterator<Item = f64> {
        (0..=2000).map(|i| -PI + PI * i as f64 / 1000.0)
    }

    #[test]
    fn dispersion_values() {
        assert_eq!(dispersion(CoinKind::Hadamard, 0.0), 0.0);
        assert!((dispersion(CoinKind::Hadamard, FRAC_PI_2) - FRAC_PI_4).abs() < 1e-15);
        assert!((dispersion(CoinKind::Fourier, 0.0) - FRAC_PI_4).abs() < 1e-15);
        for k in grid() {
            let h = dispersion(CoinKind::Hadamard, k);
            let f = dispersion(CoinKind::Fourier, k);
            assert!((-FRAC_PI_2..=FRAC_PI_2).contains(&h));
            assert!((FRAC_PI_4 - 1e-15..=3.0 * FRAC_PI_4 + 1e-15).contains(&f));
        }
    }

    #[test]
    fn hadamard_at_zero_momentum() {
        let s = coin_spectrum(CoinKind::Hadamard, 0.0).unwrap();
        assert!((s.eigenvalues[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((s.eigenvalues[1] - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn fourier_at_zero_momentum() {
        let s = coin_spectrum(CoinKind::Fourier, 0.0).unwrap();
        assert!((s.eigenvalues[0] - Complex64::from_polar(1.0, -FRAC_PI_4)).norm() < 1e-15);
        assert!((s.eigenvalues[1] - Complex64::from_polar(1.0, FRAC_PI_4)).norm() < 1e-15);
    }

    #[test]
    fn closed_forms_hold_across_the_zone() {
        for coin in CoinKind::ALL {
            for k in grid() {
                let u = step_operator(coin, k);
                let s = closed_form(coin, k);
                assert!(spectrum_defect(&u, &s) <= RESIDUAL_TOL, "{coin} k = {k}");
                for l in s.eigenvalues {
                    assert!((l.norm() - 1.0).abs() < 1e-12);
                }
                for v in s.eigenvectors {
                    assert!((v.norm_sqr() - 1.0).abs() < 1e-12);
                }
                assert!(s.eigenvectors[0].inner(&s.eigenvectors[1]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn eigenphases_match_dispersion() {
        for k in grid() {
            let w = dispersion(CoinKind::Hadamard, k);
            let s = coin_spectrum(CoinKind::Hadamard, k).unwrap();
            assert!((s.eigenvalues[0] - Complex64::from_polar(1.0, -w)).norm() < 1e-12);
            assert!((s.eigenvalues[1] + Complex64::from_polar(1.0, w)).norm() < 1e-12);
            let w = dispersion(CoinKind::Fourier, k);
            let s = coin_spectrum(CoinKind::Fourier, k).unwrap();
            assert!((s.eigenvalues[0].arg() + w).abs() < 1e-12);
            assert!((s.eigenvalues[1].arg() - w).abs() < 1e-12);
        }
    }

    #[test]
    fn direct_diagonalization_agrees() {
        for coin in CoinKind::ALL {
            for k in grid().step_by(37) {
                let u = step_operator(coin, k);
                let closed = closed_form(coin, k);
                let direct = diagonalize(&u, &closed.eigenvalues);
                assert!(spectrum_defect(&u, &direct) <= RESIDUAL_TOL);
                for i in 0..2 {
                    assert!((closed.eigenvalues[i] - direct.eigenvalues[i]).norm() < 1e-12);
                    // same ray
                    let overlap = closed.eigenvectors[i].inner(&direct.eigenvectors[i]).norm();
                    assert!((overlap - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn diagonal_matrix_fallback() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let u = [[i, zero], [zero, one]];
        let s = diagonalize(&u, &[i, one]);
        let defect = spectrum_defect(&u, &s);
        assert!(defect < 1e-12, "{defect}");
        assert!((s.eigenvectors[0].inner(&Spinor::up()).norm() - 1.0).abs() < 1e-15);
    }
}
