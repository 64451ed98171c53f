//! Flags, the optional JSON config file, and the resolved run configuration.

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use qwalk_core::analysis::{DecayQuantity, ProfileFamily};
use qwalk_core::kspace::QuadratureSpec;
use qwalk_core::lattice::default_max_window;
use qwalk_core::{CoinKind, InitialProfile};

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "qwalk", version, about = "Coin-position entanglement of discrete-time quantum walks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Lattice evolution: per-step coin moments and entropy
    Evolve,
    /// Long-time entanglement by quadrature and by closed form
    Asymptotic,
    /// Entropy over the (alpha, beta) grid
    Sweep,
    /// Simulated against asymptotic grid means for a list of dispersions
    Compare,
    /// Power-law fit of grid means or minima against the dispersion
    Fit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoinArg {
    Hadamard,
    Fourier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileArg {
    Local,
    Gaussian,
    Rect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Asymptotic,
    Simulated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuantityArg {
    Avg,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormatArg {
    Csv,
    Json,
}

/// Every flag is optional so that a config file can fill the gaps.
#[derive(Debug, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Flags {
    #[arg(long, global = true, value_enum)]
    pub coin: Option<CoinArg>,
    #[arg(long, global = true, value_enum)]
    pub profile: Option<ProfileArg>,
    /// Gaussian dispersion σ₀
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub sigma: Option<f64>,
    /// Rectangle half-width
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub a: Option<i64>,
    /// Polar spin angle, radians unless --degrees
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Azimuthal spin angle, radians unless --degrees
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub steps: Option<i64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    #[serde(alias = "grid_step")]
    pub grid_step: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    /// Comma-separated dispersions
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub sigmas: Option<Vec<f64>>,
    #[arg(long, global = true, value_enum)]
    pub quantity: Option<QuantityArg>,
    #[arg(long, global = true)]
    pub out: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    /// JSON file with default values for any flag
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    #[serde(alias = "quad_points")]
    pub quad_points: Option<usize>,
    #[arg(long, global = true)]
    #[serde(alias = "quad_tol")]
    pub quad_tol: Option<f64>,
    /// Lattice window cap in sites
    #[arg(long, global = true)]
    #[serde(alias = "max_window")]
    pub max_window: Option<usize>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Read --alpha and --beta in degrees
    #[arg(long, global = true, action = ArgAction::SetTrue)]
    #[serde(default)]
    pub degrees: bool,
}

impl Flags {
    /// Command-line values win over file values.
    pub fn over(self, file: Flags) -> Flags {
        Flags {
            coin: self.coin.or(file.coin),
            profile: self.profile.or(file.profile),
            sigma: self.sigma.or(file.sigma),
            a: self.a.or(file.a),
            alpha: self.alpha.or(file.alpha),
            beta: self.beta.or(file.beta),
            steps: self.steps.or(file.steps),
            grid_step: self.grid_step.or(file.grid_step),
            mode: self.mode.or(file.mode),
            sigmas: self.sigmas.or(file.sigmas),
            quantity: self.quantity.or(file.quantity),
            out: self.out.or(file.out),
            format: self.format.or(file.format),
            config: self.config,
            quad_points: self.quad_points.or(file.quad_points),
            quad_tol: self.quad_tol.or(file.quad_tol),
            max_window: self.max_window.or(file.max_window),
            threads: self.threads.or(file.threads),
            degrees: self.degrees || file.degrees,
        }
    }
}

pub fn load_file(path: &PathBuf) -> CliResult<Flags> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("--config {}: {e}", path.display())))
}

/// Validated configuration; angles are stored in radians.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub coin: CoinArg,
    pub profile: ProfileArg,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<u32>,
    pub alpha: f64,
    pub beta: f64,
    pub degrees: bool,
    pub steps: u64,
    pub grid_step: f64,
    pub mode: ModeArg,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sigmas: Vec<f64>,
    pub quantity: QuantityArg,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    pub format: FormatArg,
    pub quad_points: usize,
    pub quad_tol: f64,
    pub max_window: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
}

const DEFAULT_STEPS: u64 = 1000;
const DEFAULT_GRID_STEP: f64 = 0.1;

fn positive(flag: &str, v: f64) -> CliResult<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::usage(format!("{flag} must be a positive finite number, got {v}")))
    }
}

impl RunConfig {
    pub fn resolve(command: Command, flags: Flags) -> CliResult<Self> {
        let to_rad = |x: f64| if flags.degrees { x * PI / 180.0 } else { x };
        let profile = flags.profile.unwrap_or(ProfileArg::Local);
        let family_command = matches!(command, Command::Compare | Command::Fit);

        let sigma = match flags.sigma {
            Some(s) => Some(positive("--sigma", s)?),
            None if profile == ProfileArg::Gaussian && !family_command => {
                return Err(CliError::usage("--sigma is required for --profile gaussian"))
            }
            None => None,
        };
        let a = match flags.a {
            Some(a) if (0..=u32::MAX as i64).contains(&a) => Some(a as u32),
            Some(a) => return Err(CliError::usage(format!("--a must be a non-negative integer, got {a}"))),
            None if profile == ProfileArg::Rect && !family_command => {
                return Err(CliError::usage("--a is required for --profile rect"))
            }
            None => None,
        };
        if family_command && profile == ProfileArg::Local {
            return Err(CliError::usage(
                "--profile must be gaussian or rect for compare and fit",
            ));
        }

        let alpha = to_rad(flags.alpha.unwrap_or(0.0));
        if !(alpha.is_finite() && (-1e-12..=PI + 1e-12).contains(&alpha)) {
            return Err(CliError::usage(format!("--alpha must lie in [0, pi], got {alpha} rad")));
        }
        let beta = to_rad(flags.beta.unwrap_or(0.0));
        if !beta.is_finite() {
            return Err(CliError::usage("--beta must be finite"));
        }

        let steps = match flags.steps {
            Some(s) if s >= 0 => s as u64,
            Some(s) => return Err(CliError::usage(format!("--steps must be >= 0, got {s}"))),
            None => DEFAULT_STEPS,
        };
        let grid_step = positive("--grid-step", flags.grid_step.unwrap_or(DEFAULT_GRID_STEP))?;

        let sigmas = flags.sigmas.unwrap_or_default();
        if family_command {
            if sigmas.is_empty() {
                return Err(CliError::usage("--sigmas is required for compare and fit"));
            }
            for &s in &sigmas {
                positive("--sigmas", s)?;
            }
            if command == Command::Fit && sigmas.len() < 3 {
                return Err(CliError::usage(format!(
                    "--sigmas needs at least 3 values for fit, got {}\n\nUsage: qwalk fit --profile <gaussian|rect> --sigmas <S1,S2,S3,...> [--quantity <avg|min>]",
                    sigmas.len()
                )));
            }
        }

        let default_quad = QuadratureSpec::default();
        let quad_points = flags.quad_points.unwrap_or(default_quad.initial_points);
        let quad_tol = flags.quad_tol.unwrap_or(default_quad.rel_tolerance);
        let quad = QuadratureSpec {
            initial_points: quad_points,
            rel_tolerance: quad_tol,
            max_points: default_quad.max_points,
        };
        quad.validate()
            .map_err(|e| CliError::usage(format!("--quad-points/--quad-tol: {e}")))?;

        if flags.threads == Some(0) {
            return Err(CliError::usage("--threads must be at least 1"));
        }

        let format = flags.format.unwrap_or(match command {
            Command::Asymptotic | Command::Fit => FormatArg::Json,
            _ => FormatArg::Csv,
        });

        Ok(Self {
            command,
            coin: flags.coin.unwrap_or(CoinArg::Hadamard),
            profile,
            sigma,
            a,
            alpha,
            beta,
            degrees: flags.degrees,
            steps,
            grid_step,
            mode: flags.mode.unwrap_or(ModeArg::Asymptotic),
            sigmas,
            quantity: flags.quantity.unwrap_or(QuantityArg::Avg),
            out: flags.out,
            format,
            quad_points,
            quad_tol,
            max_window: flags.max_window.unwrap_or_else(|| default_max_window(steps)),
            threads: flags.threads,
        })
    }

    pub fn coin_kind(&self) -> CoinKind {
        match self.coin {
            CoinArg::Hadamard => CoinKind::Hadamard,
            CoinArg::Fourier => CoinKind::Fourier,
        }
    }

    pub fn initial_profile(&self) -> InitialProfile {
        match self.profile {
            ProfileArg::Local => InitialProfile::Local,
            ProfileArg::Gaussian => InitialProfile::Gaussian {
                sigma0: self.sigma.expect("checked in resolve"),
            },
            ProfileArg::Rect => InitialProfile::Rectangular {
                a: self.a.expect("checked in resolve"),
            },
        }
    }

    pub fn family(&self) -> ProfileFamily {
        match self.profile {
            ProfileArg::Rect => ProfileFamily::Rectangular,
            _ => ProfileFamily::Gaussian,
        }
    }

    pub fn decay_quantity(&self) -> DecayQuantity {
        match self.quantity {
            QuantityArg::Avg => DecayQuantity::Mean,
            QuantityArg::Min => DecayQuantity::Min,
        }
    }

    pub fn quadrature(&self) -> QuadratureSpec {
        QuadratureSpec {
            initial_points: self.quad_points,
            rel_tolerance: self.quad_tol,
            ..QuadratureSpec::default()
        }
    }
}
