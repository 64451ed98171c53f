//! Position-space evolution of the walk: coin on every site, then the
//! spin-conditioned shift (up moves right, down moves left).

use crate::coin::{CoinMoments, CoinOperator, Spinor};
use crate::entropy::entropy_from_moments;
use crate::error::{QwError, Result};
use crate::reduce::{ComplexSum, NeumaierSum};

/// Gaussian profiles are truncated at `|j| <= max(GAUSS_MIN_HALF_WIDTH, ceil(8σ₀))`.
pub const GAUSS_MIN_HALF_WIDTH: i64 = 1000;

/// Initial position profile; the full state is `profile ⊗ spin`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialProfile {
    Local,
    Gaussian { sigma0: f64 },
    Rectangular { a: u32 },
}

impl InitialProfile {
    pub fn validate(&self) -> Result<()> {
        match *self {
            InitialProfile::Gaussian { sigma0 } if !(sigma0 > 0.0 && sigma0.is_finite()) => Err(
                QwError::domain(format!("Gaussian width sigma0 = {sigma0} must be positive")),
            ),
            _ => Ok(()),
        }
    }

    pub fn is_local(&self) -> bool {
        matches!(self, InitialProfile::Local)
            || matches!(self, InitialProfile::Rectangular { a: 0 })
    }

    /// Position amplitudes as `(j_min, values)`, normalized to one.
    pub fn position_amplitudes(&self) -> Result<(i64, Vec<f64>)> {
        self.validate()?;
        Ok(match *self {
            InitialProfile::Local => (0, vec![1.0]),
            InitialProfile::Rectangular { a } => {
                let n = 2 * a as usize + 1;
                (-(a as i64), vec![1.0 / (n as f64).sqrt(); n])
            }
            InitialProfile::Gaussian { sigma0 } => gaussian_amplitudes(sigma0),
        })
    }
}

fn gaussian_amplitudes(sigma0: f64) -> (i64, Vec<f64>) {
    let half = GAUSS_MIN_HALF_WIDTH.max((8.0 * sigma0).ceil() as i64);
    let inv = 1.0 / (4.0 * sigma0 * sigma0);
    let mut values: Vec<f64> = (-half..=half)
        .map(|j| (-(j * j) as f64 * inv).exp())
        .collect();
    let norm = values
        .iter()
        .map(|w| w * w)
        .collect::<NeumaierSum>()
        .value()
        .sqrt();
    values.iter_mut().for_each(|w| *w /= norm);

    // Tails that underflowed to exactly zero carry nothing; drop them.
    let first = values.iter().position(|&w| w != 0.0).unwrap_or(0);
    let last = values.iter().rposition(|&w| w != 0.0).unwrap_or(0);
    (first as i64 - half, values[first..=last].to_vec())
}

/// `round((sqrt(12σ₀² + 1) - 1)/2)`: the rectangle half-width whose
/// dispersion matches a Gaussian of width `σ₀`.
pub fn sigma_to_a(sigma0: f64) -> Result<u32> {
    if !(sigma0 > 0.0 && sigma0.is_finite()) {
        return Err(QwError::domain(format!(
            "sigma0 = {sigma0} must be positive"
        )));
    }
    let a = (((12.0 * sigma0 * sigma0 + 1.0).sqrt() - 1.0) / 2.0).round();
    Ok(a.max(0.0) as u32)
}

/// Spinor amplitudes on the window `[j_min, j_min + len)`.
///
/// Both end sites are kept at exactly zero so a step never needs to look
/// outside the stored window.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkerState {
    pub j_min: i64,
    pub amps: Vec<Spinor>,
    pub t: u64,
}

impl WalkerState {
    pub fn j_max(&self) -> i64 {
        self.j_min + self.amps.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn site(&self, j: i64) -> Spinor {
        let idx = j - self.j_min;
        if idx < 0 || idx as usize >= self.amps.len() {
            Spinor::ZERO
        } else {
            self.amps[idx as usize]
        }
    }

    pub fn norm(&self) -> f64 {
        self.amps
            .iter()
            .map(Spinor::norm_sqr)
            .collect::<NeumaierSum>()
            .value()
    }
}

/// Builds `profile ⊗ spin` with a one-site zero guard on each side.
pub fn build_initial(profile: InitialProfile, spin: Spinor) -> Result<WalkerState> {
    if !spin.is_normalized(1e-12) {
        return Err(QwError::domain(format!(
            "spin is not normalized (norm^2 = {})",
            spin.norm_sqr()
        )));
    }
    let (j0, values) = profile.position_amplitudes()?;
    let mut amps = Vec::with_capacity(values.len() + 2);
    amps.push(Spinor::ZERO);
    amps.extend(values.iter().map(|&w| spin.scale_real(w)));
    amps.push(Spinor::ZERO);
    Ok(WalkerState {
        j_min: j0 - 1,
        amps,
        t: 0,
    })
}

/// One application of `S·(C ⊗ 1)`. The window grows by one site per side.
pub fn step(state: &WalkerState, coin: &CoinOperator, max_window: usize) -> Result<WalkerState> {
    let n = state.amps.len();
    let requested = n + 2;
    if requested > max_window {
        return Err(QwError::Capacity {
            requested,
            max: max_window,
        });
    }
    let mut next = vec![Spinor::ZERO; requested];
    for (i, s) in state.amps.iter().enumerate() {
        let c = coin.apply(s);
        // old index i is new index i + 1; up lands one site right, down one left
        next[i + 2].up = c.up;
        next[i].down = c.down;
    }
    Ok(WalkerState {
        j_min: state.j_min - 1,
        amps: next,
        t: state.t + 1,
    })
}

/// `A = Σ|a_j|²`, `B = Σ a_j b_j*`.
pub fn coin_moments(state: &WalkerState) -> CoinMoments {
    moments_of(&state.amps)
}

fn moments_of(amps: &[Spinor]) -> CoinMoments {
    let mut a = NeumaierSum::new();
    let mut b = ComplexSum::new();
    for s in amps {
        a.add(s.up.norm_sqr());
        b.add(s.up * s.down.conj());
    }
    CoinMoments {
        a: a.value(),
        b: b.value(),
    }
}

/// `(j, |a_j|² + |b_j|²)` for every site with nonzero probability.
pub fn position_distribution(state: &WalkerState) -> Vec<(i64, f64)> {
    state
        .amps
        .iter()
        .enumerate()
        .filter_map(|(i, s)| {
            let p = s.norm_sqr();
            (p != 0.0).then_some((state.j_min + i as i64, p))
        })
        .collect()
}

/// Default lattice bound used by the command-line harness.
pub fn default_max_window(steps: u64) -> usize {
    2 * steps as usize + 20_000
}

/// Entanglement of the coin with the position at one time step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementRecord {
    pub t: u64,
    pub moments: CoinMoments,
    pub entropy: f64,
}

impl EntanglementRecord {
    fn from_moments(t: u64, moments: CoinMoments) -> Result<Self> {
        Ok(Self {
            t,
            moments,
            entropy: entropy_from_moments(&moments)?,
        })
    }
}

/// In-place evolution over two preallocated buffers.
///
/// The buffers are sized for the whole run up front; the active range grows
/// by one site per side and step, and everything outside it stays zero.
pub struct Evolution {
    coin: [[num_complex::Complex64; 2]; 2],
    current: Vec<Spinor>,
    scratch: Vec<Spinor>,
    /// Lattice coordinate of buffer index 0.
    origin: i64,
    lo: usize,
    hi: usize,
    t: u64,
    remaining: u64,
}

impl Evolution {
    pub fn new(
        initial: &WalkerState,
        coin: &CoinOperator,
        steps: u64,
        max_window: usize,
    ) -> Result<Self> {
        let n0 = initial.amps.len();
        let final_len = n0 + 2 * steps as usize;
        if final_len > max_window {
            return Err(QwError::Capacity {
                requested: final_len,
                max: max_window,
            });
        }
        let pad = steps as usize + 1;
        let cap = n0 + 2 * pad;
        let mut current = vec![Spinor::ZERO; cap];
        current[pad..pad + n0].copy_from_slice(&initial.amps);
        Ok(Self {
            coin: coin.entries(),
            current,
            scratch: vec![Spinor::ZERO; cap],
            origin: initial.j_min - pad as i64,
            lo: pad,
            hi: pad + n0,
            t: initial.t,
            remaining: steps,
        })
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn advance(&mut self) -> Result<()> {
        if self.remaining == 0 {
            return Err(QwError::Capacity {
                requested: self.hi - self.lo + 2,
                max: self.hi - self.lo,
            });
        }
        let [[c00, c01], [c10, c11]] = self.coin;
        let (lo, hi) = (self.lo - 1, self.hi + 1);
        let old = &self.current;
        let dst = &mut self.scratch[lo..hi];
        let left = &old[lo - 1..hi - 1];
        let right = &old[lo + 1..hi + 1];
        for ((d, l), r) in dst.iter_mut().zip(left).zip(right) {
            d.up = c00 * l.up + c01 * l.down;
            d.down = c10 * r.up + c11 * r.down;
        }
        std::mem::swap(&mut self.current, &mut self.scratch);
        self.lo = lo;
        self.hi = hi;
        self.t += 1;
        self.remaining -= 1;
        Ok(())
    }

    pub fn moments(&self) -> CoinMoments {
        moments_of(&self.current[self.lo..self.hi])
    }

    /// Total probability of the current state.
    pub fn norm(&self) -> f64 {
        self.current[self.lo..self.hi]
            .iter()
            .map(Spinor::norm_sqr)
            .collect::<NeumaierSum>()
            .value()
    }

    pub fn record(&self) -> Result<EntanglementRecord> {
        EntanglementRecord::from_moments(self.t, self.moments())
    }

    pub fn state(&self) -> WalkerState {
        WalkerState {
            j_min: self.origin + self.lo as i64,
            amps: self.current[self.lo..self.hi].to_vec(),
            t: self.t,
        }
    }
}

/// Records at every `t` in `0..=steps`.
pub fn evolve(
    profile: InitialProfile,
    spin: Spinor,
    coin: &CoinOperator,
    steps: u64,
    max_window: usize,
) -> Result<Vec<EntanglementRecord>> {
    let initial = build_initial(profile, spin)?;
    let mut run = Evolution::new(&initial, coin, steps, max_window)?;
    let mut records = Vec::with_capacity(steps as usize + 1);
    records.push(run.record()?);
    for _ in 0..steps {
        run.advance()?;
        records.push(run.record()?);
    }
    Ok(records)
}

/// Entropy after `steps` steps, skipping the intermediate moments.
pub fn final_entropy(
    profile: InitialProfile,
    spin: Spinor,
    coin: &CoinOperator,
    steps: u64,
    max_window: usize,
) -> Result<f64> {
    Ok(final_state(profile, spin, coin, steps, max_window)?.1.entropy)
}

/// Final state and its entanglement record.
pub fn final_state(
    profile: InitialProfile,
    spin: Spinor,
    coin: &CoinOperator,
    steps: u64,
    max_window: usize,
) -> Result<(WalkerState, EntanglementRecord)> {
    let initial = build_initial(profile, spin)?;
    let mut run = Evolution::new(&initial, coin, steps, max_window)?;
    for _ in 0..steps {
        run.advance()?;
    }
    Ok((run.state(), run.record()?))
}
