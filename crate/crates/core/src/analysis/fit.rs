//! Power laws `v = c·σ^p + d` fitted by least squares in log-log space.

use crate::error::{QwError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Offset {
    None,
    Fixed(f64),
}

impl Offset {
    pub fn value(self) -> f64 {
        match self {
            Offset::None => 0.0,
            Offset::Fixed(d) => d,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub amplitude: f64,
    pub exponent: f64,
    pub offset: f64,
    /// RMS residual of `ln(v - d)` against the fitted line.
    pub rms_residual: f64,
}

impl PowerLawFit {
    pub fn eval(&self, x: f64) -> f64 {
        self.amplitude * x.powf(self.exponent) + self.offset
    }
}

pub fn fit_power_law(points: &[(f64, f64)], offset: Offset) -> Result<PowerLawFit> {
    if points.len() < 3 {
        return Err(QwError::Fit(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    let d = offset.value();
    let mut xs = Vec::with_capacity(points.len());
    let mut ys = Vec::with_capacity(points.len());
    for &(x, v) in points {
        if x <= 0.0 || !x.is_finite() {
            return Err(QwError::Fit(format!("abscissa {x} must be positive")));
        }
        if v <= d || !v.is_finite() {
            return Err(QwError::Fit(format!(
                "value {v} at {x} does not exceed the offset {d}"
            )));
        }
        xs.push(x.ln());
        ys.push((v - d).ln());
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx <= 1e-24 * n {
        return Err(QwError::Fit("abscissae are degenerate".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Ok(PowerLawFit {
        amplitude: intercept.exp(),
        exponent: slope,
        offset: d,
        rms_residual: (ss / n).sqrt(),
    })
}
