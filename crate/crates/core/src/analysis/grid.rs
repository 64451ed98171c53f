use std::f64::consts::{PI, TAU};

use crate::coin::BlochAngles;
use crate::error::{QwError, Result};

/// Rectangular grid of Bloch angles.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    alphas: Vec<f64>,
    betas: Vec<f64>,
}

impl SweepGrid {
    pub fn new(alphas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        for (name, v) in [("alphas", &alphas), ("betas", &betas)] {
            if v.is_empty() {
                return Err(QwError::domain(format!("grid {name} are empty")));
            }
            if v.windows(2).any(|w| w[1] <= w[0]) || v.iter().any(|x| !x.is_finite()) {
                return Err(QwError::domain(format!(
                    "grid {name} must be finite and strictly increasing"
                )));
            }
        }
        if alphas[0] < 0.0 || alphas[alphas.len() - 1] > PI + 1e-12 {
            return Err(QwError::domain("grid alphas must lie in [0, pi]"));
        }
        Ok(Self { alphas, betas })
    }

    /// Multiples of `step` from `(0, 0)` up to `(π, 2π)` inclusive.
    pub fn with_step(step: f64) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(QwError::domain(format!("grid step {step} must be positive")));
        }
        let axis = |bound: f64| {
            (0..)
                .map(|i| i as f64 * step)
                .take_while(|x| *x <= bound + 1e-9)
                .map(|x| x.min(bound))
                .collect::<Vec<_>>()
        };
        Self::new(axis(PI), axis(TAU))
    }

    pub fn single(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(vec![alpha], vec![beta])
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn len(&self) -> usize {
        self.alphas.len() * self.betas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(alpha, beta)` of flat index `idx` (alpha-major).
    pub fn point(&self, idx: usize) -> (f64, f64) {
        let nb = self.betas.len();
        (self.alphas[idx / nb], self.betas[idx % nb])
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    pub fn angles(&self) -> Result<Vec<BlochAngles>> {
        self.points().map(|(a, b)| BlochAngles::new(a, b)).collect()
    }
}

/// The 0.1-spaced grid `{0, ..., 3.1} × {0, ..., 6.2}`: 2016 spin states.
pub fn paper_grid() -> SweepGrid {
    SweepGrid::with_step(0.1).expect("fixed step is valid")
}
