//! Bloch-grid sweeps of the asymptotic and simulated entanglement.
//!
//! Grid points are evaluated in parallel into an indexed buffer; every
//! statistic is then reduced in index order, so results are bitwise
//! independent of the thread count.

use rayon::prelude::*;

use crate::analysis::fit::{fit_power_law, Offset, PowerLawFit};
use crate::analysis::grid::SweepGrid;
use crate::coin::{spin_from_angles, BlochAngles, CoinKind};
use crate::entropy::entropy_from_delta;
use crate::error::{QwError, Result};
use crate::kspace::{
    closed_delta, limit_delta, AsymptoticKernel, ProfileClass, QuadratureSpec,
};
use crate::lattice::{evolve, final_entropy, sigma_to_a, InitialProfile};
use crate::reduce::{stable_mean, NeumaierSum};

/// Entropy on a grid plus its summary statistics. Averages are plain
/// arithmetic means over grid points, not area-weighted on the sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub grid: SweepGrid,
    /// Alpha-major: `values[i * n_beta + j]`.
    pub values: Vec<f64>,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub argmin: (f64, f64),
    pub argmax: (f64, f64),
}

impl SweepResult {
    pub fn from_values(grid: SweepGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(QwError::domain(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        let mut imin = 0;
        let mut imax = 0;
        for (i, v) in values.iter().enumerate() {
            if *v < values[imin] {
                imin = i;
            }
            if *v > values[imax] {
                imax = i;
            }
        }
        Ok(Self {
            mean: stable_mean(&values),
            min: values[imin],
            max: values[imax],
            argmin: grid.point(imin),
            argmax: grid.point(imax),
            grid,
            values,
        })
    }

    pub fn value(&self, i_alpha: usize, i_beta: usize) -> f64 {
        self.values[i_alpha * self.grid.betas().len() + i_beta]
    }
}

fn collect_points<F>(grid: &SweepGrid, eval: F) -> Result<Vec<f64>>
where
    F: Fn(BlochAngles) -> Result<f64> + Sync,
{
    (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let (a, b) = grid.point(i);
            eval(BlochAngles::new(a, b)?)
        })
        .collect()
}

/// Long-time entropy at every grid point by spectral projection.
pub fn sweep_asymptotic(
    coin: CoinKind,
    profile: InitialProfile,
    grid: &SweepGrid,
    quad: &QuadratureSpec,
) -> Result<SweepResult> {
    let kernel = AsymptoticKernel::new(profile, coin, quad)?;
    let values = collect_points(grid, |angles| Ok(kernel.characteristic(angles)?.entropy))?;
    SweepResult::from_values(grid.clone(), values)
}

/// Long-time entropy from a closed-form characteristic function.
pub fn sweep_closed_form(
    coin: CoinKind,
    class: ProfileClass,
    grid: &SweepGrid,
) -> Result<SweepResult> {
    let values = collect_points(grid, |angles| entropy_from_delta(closed_delta(coin, class, angles)?))?;
    SweepResult::from_values(grid.clone(), values)
}

/// Lattice entropy after `steps` steps at every grid point.
pub fn sweep_simulated(
    coin: CoinKind,
    profile: InitialProfile,
    grid: &SweepGrid,
    steps: u64,
    max_window: usize,
) -> Result<SweepResult> {
    let op = coin.operator();
    let values = collect_points(grid, |angles| {
        final_entropy(profile, spin_from_angles(angles), &op, steps, max_window)
    })?;
    SweepResult::from_values(grid.clone(), values)
}

/// Grid-averaged entropy at every `t` in `0..=steps`.
pub fn average_trace(
    coin: CoinKind,
    profile: InitialProfile,
    grid: &SweepGrid,
    steps: u64,
    max_window: usize,
) -> Result<Vec<(u64, f64)>> {
    let op = coin.operator();
    let traces: Vec<Vec<f64>> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let (a, b) = grid.point(i);
            let spin = spin_from_angles(BlochAngles::new(a, b)?);
            Ok(evolve(profile, spin, &op, steps, max_window)?
                .into_iter()
                .map(|r| r.entropy)
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok((0..=steps as usize)
        .map(|t| {
            let sum: NeumaierSum = traces.iter().map(|tr| tr[t]).collect();
            (t as u64, sum.value() / traces.len() as f64)
        })
        .collect())
}

/// Delocalized profile families parameterized by the dispersion `σ₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileFamily {
    Gaussian,
    /// Half-width `a = round((sqrt(12σ₀² + 1) - 1)/2)`.
    Rectangular,
}

impl ProfileFamily {
    pub fn profile(self, sigma0: f64) -> Result<InitialProfile> {
        match self {
            ProfileFamily::Gaussian => {
                let p = InitialProfile::Gaussian { sigma0 };
                p.validate()?;
                Ok(p)
            }
            ProfileFamily::Rectangular => Ok(InitialProfile::Rectangular {
                a: sigma_to_a(sigma0)?,
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonReport {
    pub sigma0: f64,
    /// `⟨S_E(T)⟩` over the grid.
    pub mean_simulated: f64,
    /// `⟨S̄_E⟩` over the grid.
    pub mean_asymptotic: f64,
    pub delta_pct: f64,
}

/// Lattice mean at `T = steps` against the asymptotic mean, per `σ₀`.
pub fn compare(
    coin: CoinKind,
    family: ProfileFamily,
    sigmas: &[f64],
    grid: &SweepGrid,
    steps: u64,
    quad: &QuadratureSpec,
    max_window: usize,
) -> Result<Vec<ComparisonReport>> {
    if sigmas.is_empty() {
        return Err(QwError::domain("empty sigma list"));
    }
    sigmas
        .iter()
        .map(|&sigma0| {
            let profile = family.profile(sigma0)?;
            let sim = sweep_simulated(coin, profile, grid, steps, max_window)?.mean;
            let asym = sweep_asymptotic(coin, profile, grid, quad)?.mean;
            Ok(ComparisonReport {
                sigma0,
                mean_simulated: sim,
                mean_asymptotic: asym,
                delta_pct: 100.0 * (sim - asym).abs() / asym,
            })
        })
        .collect()
}

/// Grid mean of the entropy in the infinite-dispersion limit. Both
/// families share the delocalized closed form, so only the coin matters.
pub fn asymptote_offset(coin: CoinKind, grid: &SweepGrid) -> Result<f64> {
    let values = collect_points(grid, |angles| entropy_from_delta(limit_delta(coin, angles)))?;
    Ok(stable_mean(&values))
}

/// Sweep statistic tracked against the dispersion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayQuantity {
    Mean,
    Min,
}

/// `(σ₀, statistic)` pairs from asymptotic sweeps.
pub fn decay_points(
    coin: CoinKind,
    family: ProfileFamily,
    sigmas: &[f64],
    grid: &SweepGrid,
    quantity: DecayQuantity,
    quad: &QuadratureSpec,
) -> Result<Vec<(f64, f64)>> {
    sigmas
        .iter()
        .map(|&s| {
            let r = sweep_asymptotic(coin, family.profile(s)?, grid, quad)?;
            Ok((
                s,
                match quantity {
                    DecayQuantity::Mean => r.mean,
                    DecayQuantity::Min => r.min,
                },
            ))
        })
        .collect()
}

/// Power-law decay of a sweep statistic. Means are fitted above the
/// infinite-dispersion offset; minima decay to zero and are fitted bare.
pub fn fit_decay(
    coin: CoinKind,
    family: ProfileFamily,
    sigmas: &[f64],
    grid: &SweepGrid,
    quantity: DecayQuantity,
    quad: &QuadratureSpec,
) -> Result<PowerLawFit> {
    if sigmas.len() < 3 {
        return Err(QwError::Fit(format!(
            "need at least 3 dispersions, got {}",
            sigmas.len()
        )));
    }
    let points = decay_points(coin, family, sigmas, grid, quantity, quad)?;
    let offset = match quantity {
        DecayQuantity::Mean => Offset::Fixed(asymptote_offset(coin, grid)?),
        DecayQuantity::Min => Offset::None,
    };
    fit_power_law(&points, offset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::grid::paper_grid;
    use crate::kspace::{local_f, max_entanglement_beta};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn q() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn nearest(grid: &SweepGrid, target: (f64, f64)) -> (f64, f64) {
        grid.points()
            .min_by(|x, y| {
                let d = |p: &(f64, f64)| (p.0 - target.0).powi(2) + (p.1 - target.1).powi(2);
                d(x).partial_cmp(&d(y)).unwrap()
            })
            .unwrap()
    }

    #[test]
    fn local_hadamard_statistics() {
        let r = sweep_asymptotic(CoinKind::Hadamard, InitialProfile::Local, &paper_grid(), &q()).unwrap();
        assert!((r.mean - 0.871).abs() < 0.002, "{}", r.mean);
        assert!((r.min - 0.736).abs() < 0.002, "{}", r.min);
        assert!(r.values.iter().all(|v| (0.0..=1.0).contains(v)));
        let closed =
            sweep_closed_form(CoinKind::Hadamard, ProfileClass::Local, &paper_grid()).unwrap();
        for (x, y) in r.values.iter().zip(&closed.values) {
            assert!((x - y).abs() < 1e-7);
        }
    }

    #[test]
    fn statistics_are_consistent() {
        let grid = SweepGrid::with_step(0.5).unwrap();
        let r = sweep_asymptotic(CoinKind::Fourier, InitialProfile::Gaussian { sigma0: 1.5 }, &grid, &q())
            .unwrap();
        let max = r.values.iter().cloned().fold(f64::MIN, f64::max);
        let min = r.values.iter().cloned().fold(f64::MAX, f64::min);
        let mean = r.values.iter().sum::<f64>() / r.values.len() as f64;
        assert_eq!(r.max, max);
        assert_eq!(r.min, min);
        assert!((r.mean - mean).abs() < 1e-12);
        assert!(SweepResult::from_values(grid, vec![0.0; 3]).is_err());
    }

    #[test]
    fn minima_sit_at_the_local_extremum() {
        let grid = paper_grid();
        let targets = [nearest(&grid, (FRAC_PI_4, 0.0)), nearest(&grid, (3.0 * FRAC_PI_4, PI))];
        for profile in [
            InitialProfile::Local,
            InitialProfile::Gaussian { sigma0: 2.0 },
            InitialProfile::Rectangular { a: 3 },
        ] {
            let r = sweep_asymptotic(CoinKind::Hadamard, profile, &grid, &q()).unwrap();
            assert!(targets.contains(&r.argmin), "{profile:?}: {:?}", r.argmin);
        }
    }

    #[test]
    fn gaussian_means_decrease_toward_offset() {
        let grid = paper_grid();
        let means: Vec<f64> = [1.0, 2.0, 5.0, 10.0]
            .iter()
            .map(|&s| {
                sweep_asymptotic(CoinKind::Hadamard, InitialProfile::Gaussian { sigma0: s }, &grid, &q())
                    .unwrap()
                    .mean
            })
            .collect();
        assert!(means.windows(2).all(|w| w[1] < w[0]), "{means:?}");
        assert!(means.iter().all(|m| *m > 0.688 - 1e-3));
    }

    #[test]
    fn offsets() {
        let grid = paper_grid();
        let h = asymptote_offset(CoinKind::Hadamard, &grid).unwrap();
        let f = asymptote_offset(CoinKind::Fourier, &grid).unwrap();
        assert!((h - 0.688).abs() < 0.002, "{h}");
        assert!((f - 0.796).abs() < 0.002, "{f}");
        let single = SweepGrid::single(FRAC_PI_2, FRAC_PI_2).unwrap();
        assert!((asymptote_offset(CoinKind::Hadamard, &single).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn max_condition_band_for_wide_gaussian() {
        let profile = InitialProfile::Gaussian { sigma0: 10.0 };
        let kernel = AsymptoticKernel::new(profile, CoinKind::Hadamard, &q()).unwrap();
        for i in 9..=22 {
            let alpha = 0.1 * i as f64;
            let beta = max_entanglement_beta(alpha).unwrap();
            let s = kernel.characteristic(BlochAngles::new(alpha, beta).unwrap()).unwrap().entropy;
            assert!(s > 0.999, "alpha = {alpha}: {s}");
        }
    }

    #[test]
    fn simulated_sweep_at_time_zero_is_separable() {
        let grid = SweepGrid::with_step(0.7).unwrap();
        let r = sweep_simulated(CoinKind::Hadamard, InitialProfile::Local, &grid, 0, 100).unwrap();
        assert!(r.values.iter().all(|v| *v < 1e-12));
        let trace = average_trace(CoinKind::Fourier, InitialProfile::Rectangular { a: 2 }, &grid, 3, 100).unwrap();
        assert_eq!(trace.len(), 4);
        assert_eq!(trace[0].0, 0);
        assert!(trace[0].1 < 1e-12);
    }

    #[test]
    fn compare_single_sigma() {
        let grid = SweepGrid::with_step(0.8).unwrap();
        let reports = compare(
            CoinKind::Hadamard,
            ProfileFamily::Gaussian,
            &[2.0],
            &grid,
            10,
            &q(),
            1 << 16,
        )
        .unwrap();
        assert_eq!(reports.len(), 1);
        let r = reports[0];
        let expected = 100.0 * (r.mean_simulated - r.mean_asymptotic).abs() / r.mean_asymptotic;
        assert!((r.delta_pct - expected).abs() < 1e-12);
        assert!(compare(CoinKind::Hadamard, ProfileFamily::Gaussian, &[], &grid, 10, &q(), 1 << 16).is_err());
    }

    #[test]
    fn family_profiles() {
        assert_eq!(
            ProfileFamily::Rectangular.profile(10.0).unwrap(),
            InitialProfile::Rectangular { a: 17 }
        );
        assert!(ProfileFamily::Gaussian.profile(-1.0).is_err());
    }

    #[test]
    fn local_factor_reproduces_local_sweep() {
        let grid = SweepGrid::with_step(0.4).unwrap();
        let a = sweep_closed_form(CoinKind::Fourier, ProfileClass::Local, &grid).unwrap();
        let b = sweep_closed_form(CoinKind::Fourier, ProfileClass::Delocalized { f: local_f() }, &grid)
            .unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
