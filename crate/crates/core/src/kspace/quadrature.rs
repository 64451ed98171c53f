//! Trapezoidal rule on the periodic interval `[-π, π)`, normalized by `2π`.
//!
//! For smooth periodic integrands the trapezoid converges geometrically, so
//! the node count is doubled until two successive estimates agree.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{QwError, Result};
use crate::reduce::ComplexSum;

/// Absolute change below which an estimate counts as converged.
pub const ABS_FLOOR: f64 = 1e-14;
pub const MAX_POINTS_LIMIT: usize = 1 << 20;

/// Node counts at or above this are evaluated in parallel.
const PARALLEL_THRESHOLD: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub initial_points: usize,
    pub rel_tolerance: f64,
    pub max_points: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            initial_points: 1024,
            rel_tolerance: 1e-10,
            max_points: MAX_POINTS_LIMIT,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.initial_points.is_power_of_two() || self.initial_points < 64 {
            return Err(QwError::domain(format!(
                "initial_points = {} must be a power of two >= 64",
                self.initial_points
            )));
        }
        if self.max_points > MAX_POINTS_LIMIT || self.max_points < self.initial_points {
            return Err(QwError::domain(format!(
                "max_points = {} must lie in [initial_points, 2^20]",
                self.max_points
            )));
        }
        if !(self.rel_tolerance > 0.0 && self.rel_tolerance.is_finite()) {
            return Err(QwError::domain(format!(
                "rel_tolerance = {} must be positive",
                self.rel_tolerance
            )));
        }
        Ok(())
    }

    /// Raises `initial_points` to the next power of two `>= n`, capped at
    /// `max_points`.
    pub fn with_min_points(mut self, n: usize) -> Self {
        let want = n.next_power_of_two().min(self.max_points);
        if want > self.initial_points {
            self.initial_points = want;
        }
        self
    }
}

/// `∫_{-π}^{π} dk/2π f(k)` for a scalar integrand.
pub fn quadrature<F>(integrand: F, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    let [v] = integrate_periodic(|k| Ok([integrand(k)]), spec)?;
    Ok(v)
}

/// Vector-valued, fallible version of [`quadrature`]. Every component must
/// meet the tolerance.
pub fn integrate_periodic<const K: usize, F>(integrand: F, spec: &QuadratureSpec) -> Result<[Complex64; K]>
where
    F: Fn(f64) -> Result<[Complex64; K]> + Sync,
{
    spec.validate()?;
    let mut n = spec.initial_points;
    let mut estimate = node_mean(&integrand, n, 0.0)?;
    loop {
        if 2 * n > spec.max_points {
            return Err(QwError::Convergence {
                points: n,
                change: f64::NAN,
                magnitude: f64::NAN,
            });
        }
        let midpoints = node_mean(&integrand, n, 0.5)?;
        let mut refined = [Complex64::new(0.0, 0.0); K];
        let mut worst: Option<(f64, f64)> = None;
        for c in 0..K {
            refined[c] = 0.5 * (estimate[c] + midpoints[c]);
            let change = (refined[c] - estimate[c]).norm();
            let magnitude = refined[c].norm();
            if change > spec.rel_tolerance * magnitude && change > ABS_FLOOR {
                worst = Some((change, magnitude));
            }
        }
        n *= 2;
        estimate = refined;
        match worst {
            None => return Ok(estimate),
            Some((change, magnitude)) if 2 * n > spec.max_points => {
                return Err(QwError::Convergence {
                    points: n,
                    change,
                    magnitude,
                });
            }
            Some(_) => {}
        }
    }
}

/// Mean of the integrand over `k_m = -π + 2π(m + shift)/n`.
fn node_mean<const K: usize, F>(integrand: &F, n: usize, shift: f64) -> Result<[Complex64; K]>
where
    F: Fn(f64) -> Result<[Complex64; K]> + Sync,
{
    let h = std::f64::consts::TAU / n as f64;
    let node = |m: usize| -std::f64::consts::PI + h * (m as f64 + shift);
    let values: Vec<[Complex64; K]> = if n >= PARALLEL_THRESHOLD {
        (0..n)
            .into_par_iter()
            .map(|m| integrand(node(m)))
            .collect::<Result<_>>()?
    } else {
        (0..n).map(|m| integrand(node(m))).collect::<Result<_>>()?
    };
    let mut sums = [ComplexSum::new(); K];
    for v in &values {
        for (acc, z) in sums.iter_mut().zip(v) {
            acc.add(*z);
        }
    }
    Ok(sums.map(|s| s.value() / n as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    /// Brute-force midpoint sum with a fixed, very fine grid.
    fn brute_force(f: impl Fn(f64) -> f64, n: usize) -> f64 {
        let h = std::f64::consts::TAU / n as f64;
        (0..n)
            .map(|m| f(-std::f64::consts::PI + h * (m as f64 + 0.5)))
            .sum::<f64>()
            / n as f64
    }

    #[test]
    fn constant_is_exact() {
        let v = quadrature(|_| re(1.0), &QuadratureSpec::default()).unwrap();
        assert_eq!(v, re(1.0));
    }

    #[test]
    fn rational_trig_integrals() {
        let spec = QuadratureSpec::default();
        let f1 = |k: f64| 1.0 / (3.0 + (2.0 * k).cos());
        let f2 = |k: f64| k.cos().powi(2) / (3.0 + (2.0 * k).cos());
        // closed forms, confirmed by a dense midpoint sum
        let e1 = 1.0 / (2.0 * SQRT_2);
        let e2 = (2.0 - SQRT_2) / 4.0;
        assert!((brute_force(f1, 1 << 18) - e1).abs() < 1e-12);
        assert!((brute_force(f2, 1 << 18) - e2).abs() < 1e-12);
        let v1 = quadrature(|k| re(f1(k)), &spec).unwrap();
        let v2 = quadrature(|k| re(f2(k)), &spec).unwrap();
        assert!((v1.re - e1).abs() < 1e-12);
        assert!((v2.re - e2).abs() < 1e-12);
        assert!((v1.re - 0.353553).abs() < 1e-6);
        assert!((v2.re - 0.146447).abs() < 1e-6);
    }

    #[test]
    fn complex_components() {
        let spec = QuadratureSpec::default();
        let v = quadrature(|k| Complex64::from_polar(1.0, k).powi(2) + re(k.cos().powi(2)), &spec)
            .unwrap();
        assert!((v - re(0.5)).norm() < 1e-14);
    }

    #[test]
    fn non_convergence_reported() {
        let spec = QuadratureSpec {
            initial_points: 64,
            rel_tolerance: 1e-14,
            max_points: 256,
        };
        // kinks between nodes: only second-order convergence
        let err = quadrature(|k| re((k - 0.3).sin().abs()), &spec).unwrap_err();
        assert!(matches!(err, QwError::Convergence { .. }));
    }

    #[test]
    fn spec_validation() {
        let mut s = QuadratureSpec::default();
        assert!(s.validate().is_ok());
        s.initial_points = 1000;
        assert!(s.validate().is_err());
        s.initial_points = 32;
        assert!(s.validate().is_err());
        let s = QuadratureSpec {
            max_points: 1 << 21,
            ..Default::default()
        };
        assert!(s.validate().is_err());
        assert_eq!(
            QuadratureSpec::default().with_min_points(4480).initial_points,
            8192
        );
        assert_eq!(
            QuadratureSpec::default().with_min_points(10).initial_points,
            1024
        );
    }

    #[test]
    fn parallel_and_serial_paths_agree_bitwise() {
        let f = |k: f64| Ok([Complex64::new((3.0 * k).sin().exp(), k.cos() / (2.0 + k.sin()))]);
        let a = node_mean(&f, 8192, 0.0).unwrap();
        let b = {
            let h = std::f64::consts::TAU / 8192.0;
            let mut acc = ComplexSum::new();
            for m in 0..8192 {
                acc.add(f(-std::f64::consts::PI + h * m as f64).unwrap()[0]);
            }
            acc.value() / 8192.0
        };
        assert_eq!(a[0], b);
    }
}
