//! Spin states, coin operators and the reduced-coin moments.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{QwError, Result};

const UNITARITY_TOL: f64 = 1e-12;

/// Polar and azimuthal angles of a pure spin state on the Bloch sphere.
///
/// `alpha` is kept in `[0, π]`; `beta` is reduced to `[-π, π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAngles {
    alpha: f64,
    beta: f64,
}

impl BlochAngles {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(QwError::domain("Bloch angles must be finite"));
        }
        if !(-1e-12..=PI + 1e-12).contains(&alpha) {
            return Err(QwError::domain(format!("alpha = {alpha} outside [0, pi]")));
        }
        Ok(Self {
            alpha: alpha.clamp(0.0, PI),
            beta: canonical_beta(beta),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Reduces an azimuth to `[-π, π)`.
pub fn canonical_beta(beta: f64) -> f64 {
    let mut b = beta - TAU * ((beta + PI) / TAU).floor();
    if b >= PI {
        b -= TAU;
    }
    if b < -PI {
        b = -PI;
    }
    b
}

/// A two-component complex amplitude `(up, down)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Spinor {
    pub up: Complex64,
    pub down: Complex64,
}

impl Spinor {
    pub const ZERO: Spinor = Spinor {
        up: Complex64::new(0.0, 0.0),
        down: Complex64::new(0.0, 0.0),
    };

    pub fn new(up: Complex64, down: Complex64) -> Self {
        Self { up, down }
    }

    pub fn up() -> Self {
        Self::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }

    pub fn down() -> Self {
        Self::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.up.norm_sqr() + self.down.norm_sqr()
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &Spinor) -> Complex64 {
        self.up.conj() * other.up + self.down.conj() * other.down
    }

    pub fn scale(&self, c: Complex64) -> Spinor {
        Spinor::new(self.up * c, self.down * c)
    }

    pub fn scale_real(&self, x: f64) -> Spinor {
        Spinor::new(self.up * x, self.down * x)
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }
}

impl std::ops::Add for Spinor {
    type Output = Spinor;
    fn add(self, rhs: Spinor) -> Spinor {
        Spinor::new(self.up + rhs.up, self.down + rhs.down)
    }
}

impl std::ops::Sub for Spinor {
    type Output = Spinor;
    fn sub(self, rhs: Spinor) -> Spinor {
        Spinor::new(self.up - rhs.up, self.down - rhs.down)
    }
}

/// `cos(α/2)|↑⟩ + e^{iβ} sin(α/2)|↓⟩`.
pub fn spin_from_angles(angles: BlochAngles) -> Spinor {
    let (s, c) = (0.5 * angles.alpha).sin_cos();
    Spinor::new(
        Complex64::new(c, 0.0),
        Complex64::from_polar(s, angles.beta),
    )
}

/// A 2×2 unitary acting on the spin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinOperator {
    m: [[Complex64; 2]; 2],
}

impl CoinOperator {
    /// Builds a coin from row-major entries, rejecting non-unitary matrices.
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self> {
        let coin = Self { m };
        let defect = coin.unitarity_defect();
        if defect >= UNITARITY_TOL {
            return Err(QwError::Numerical(format!(
                "coin is not unitary: max |U†U - I| = {defect:.3e}"
            )));
        }
        Ok(coin)
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self { m: [[h, h], [h, -h]] }
    }

    pub fn fourier() -> Self {
        let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let i = Complex64::new(0.0, FRAC_1_SQRT_2);
        Self { m: [[r, i], [i, r]] }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            m: [[one, zero], [zero, one]],
        }
    }

    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        self.m
    }

    #[inline]
    pub fn apply(&self, s: &Spinor) -> Spinor {
        Spinor::new(
            self.m[0][0] * s.up + self.m[0][1] * s.down,
            self.m[1][0] * s.up + self.m[1][1] * s.down,
        )
    }

    /// `max |(U†U - I)_{ij}|`.
    pub fn unitarity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Complex64::new(0.0, 0.0);
                for r in 0..2 {
                    acc += self.m[r][i].conj() * self.m[r][j];
                }
                if i == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }
}

/// The two balanced coins the momentum-space engine knows in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoinKind {
    Hadamard,
    Fourier,
}

impl CoinKind {
    pub const ALL: [CoinKind; 2] = [CoinKind::Hadamard, CoinKind::Fourier];

    pub fn operator(self) -> CoinOperator {
        match self {
            CoinKind::Hadamard => CoinOperator::hadamard(),
            CoinKind::Fourier => CoinOperator::fourier(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CoinKind::Hadamard => "hadamard",
            CoinKind::Fourier => "fourier",
        }
    }
}

impl fmt::Display for CoinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoinKind {
    type Err = QwError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hadamard" | "h" => Ok(CoinKind::Hadamard),
            "fourier" | "kempe" | "f" => Ok(CoinKind::Fourier),
            other => Err(QwError::domain(format!("unknown coin '{other}'"))),
        }
    }
}

/// Moments of the reduced coin state `ρ_C = [[A, B], [B*, 1-A]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinMoments {
    pub a: f64,
    pub b: Complex64,
}

impl CoinMoments {
    pub fn new(a: f64, b: Complex64) -> Result<Self> {
        let m = Self { a, b };
        m.validate(1e-12)?;
        Ok(m)
    }

    /// Checks `0 <= A <= 1` and positivity of `ρ_C`, i.e. `|B|² <= A(1-A)`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        if !self.a.is_finite() || !self.b.re.is_finite() || !self.b.im.is_finite() {
            return Err(QwError::domain("coin moments must be finite"));
        }
        if self.a < -tol || self.a > 1.0 + tol {
            return Err(QwError::domain(format!("A = {} outside [0, 1]", self.a)));
        }
        let det = self.a * (1.0 - self.a) - self.b.norm_sqr();
        if det < -tol {
            return Err(QwError::domain(format!(
                "reduced coin state is not positive: A(1-A) - |B|^2 = {det:.3e}"
            )));
        }
        Ok(())
    }

    /// `C = 1 - A`.
    pub fn c(&self) -> f64 {
        1.0 - self.a
    }

    /// `(λ₊ - λ₋)² = 1 - 4[A(1-A) - |B|²]`.
    pub fn characteristic_delta(&self) -> f64 {
        1.0 - 4.0 * (self.a * (1.0 - self.a) - self.b.norm_sqr())
    }
}
