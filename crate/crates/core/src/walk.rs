//! Initial states and unitary evolution of the walker.
//!
//! The full pure state lives on a contiguous window of integer lattice sites;
//! each site carries a chirality spinor `(a_n, b_n)`. One step applies the
//! coin rotation to every spinor and then shifts all up-amplitudes one site to
//! the right and all down-amplitudes one site to the left.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mat2::{Mat2, ZERO};

/// Tolerance on the state norm accepted by [`WalkerState::new`].
pub const NORM_TOL: f64 = 1e-12;

/// Coin bias parameter θ ∈ (0, π/2]. θ = π/4 selects the Hadamard walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinParams {
    theta: f64,
}

impl CoinParams {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() || theta <= 0.0 || theta > std::f64::consts::FRAC_PI_2 {
            return Err(Error::InvalidParameter(format!(
                "coin angle theta must lie in (0, pi/2], got {theta}"
            )));
        }
        Ok(Self { theta })
    }

    /// The Hadamard walk, θ = π/4.
    pub fn hadamard() -> Self {
        Self {
            theta: std::f64::consts::FRAC_PI_4,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The coin matrix ((cosθ, sinθ), (sinθ, −cosθ)).
    pub fn matrix(&self) -> Mat2 {
        coin_matrix(self.theta)
    }
}

/// The real symmetric unitary coin for an arbitrary angle.
///
/// Unlike [`CoinParams`], this places no restriction on θ; the degenerate
/// angles 0 and π/2 are meaningful as limiting cases of the matrix even
/// though the thermodynamic analysis rejects them.
pub fn coin_matrix(theta: f64) -> Mat2 {
    let (s, c) = theta.sin_cos();
    [
        [Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(-c, 0.0)],
    ]
}

/// Chirality angles (γ, φ) selecting the spinor cos(γ/2)|+⟩ + e^{iφ} sin(γ/2)|−⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiralitySpec {
    gamma: f64,
    phi: f64,
}

impl ChiralitySpec {
    pub fn new(gamma: f64, phi: f64) -> Result<Self> {
        if !gamma.is_finite() || !(0.0..=std::f64::consts::PI).contains(&gamma) {
            return Err(Error::InvalidParameter(format!(
                "chirality angle gamma must lie in [0, pi], got {gamma}"
            )));
        }
        if !phi.is_finite() || !(0.0..2.0 * std::f64::consts::PI).contains(&phi) {
            return Err(Error::InvalidParameter(format!(
                "chirality angle phi must lie in [0, 2*pi), got {phi}"
            )));
        }
        Ok(Self { gamma, phi })
    }

    /// The coin state |+⟩.
    pub fn up() -> Self {
        Self {
            gamma: 0.0,
            phi: 0.0,
        }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Spinor components (unit norm by construction).
    pub fn spinor(&self) -> (Complex64, Complex64) {
        let half = 0.5 * self.gamma;
        (
            Complex64::new(half.cos(), 0.0),
            Complex64::from_polar(half.sin(), self.phi),
        )
    }

    /// Bloch vector (sinγ cosφ, sinγ sinφ, cosγ) of the spinor.
    pub fn bloch(&self) -> [f64; 3] {
        [
            self.gamma.sin() * self.phi.cos(),
            self.gamma.sin() * self.phi.sin(),
            self.gamma.cos(),
        ]
    }
}

/// Position profile of an initial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateFamily {
    /// Gaussian envelope of width σ centered at the origin, sampled on the
    /// integer sites [−⌈6σ⌉, ⌈6σ⌉] and renormalized.
    Gaussian { sigma: f64 },
    /// Uniform superposition over `count` (odd) sites centered at the origin.
    Uniform { count: usize },
    /// All amplitude on a single site.
    Localized { site: i64 },
}

/// An initial-state recipe: a position profile times a chirality spinor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialStateSpec {
    pub family: StateFamily,
    pub chirality: ChiralitySpec,
}

impl InitialStateSpec {
    pub fn new(family: StateFamily, chirality: ChiralitySpec) -> Self {
        Self { family, chirality }
    }

    /// Build the walker state described by this spec.
    pub fn build(&self) -> Result<WalkerState> {
        let (up, down) = self.chirality.spinor();
        match self.family {
            StateFamily::Gaussian { sigma } => {
                if !sigma.is_finite() || sigma <= 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "gaussian width sigma must be positive, got {sigma}"
                    )));
                }
                let half_window = (6.0 * sigma).ceil() as i64;
                let len = (2 * half_window + 1) as usize;
                let prefactor = (2.0 * std::f64::consts::PI * sigma * sigma).powf(-0.25);
                let mut ups = Vec::with_capacity(len);
                let mut downs = Vec::with_capacity(len);
                for n in -half_window..=half_window {
                    let envelope = prefactor * (-(n as f64).powi(2) / (4.0 * sigma * sigma)).exp();
                    ups.push(up * envelope);
                    downs.push(down * envelope);
                }
                // The continuum normalization of the envelope is only
                // asymptotic on the lattice; renormalize explicitly.
                WalkerState::normalized(-half_window, ups, downs)
            }
            StateFamily::Uniform { count } => {
                if count == 0 || count % 2 == 0 {
                    return Err(Error::InvalidParameter(format!(
                        "uniform site count must be odd and positive, got {count}"
                    )));
                }
                let half_window = (count as i64 - 1) / 2;
                let amp = (count as f64).sqrt().recip();
                let ups = vec![up * amp; count];
                let downs = vec![down * amp; count];
                WalkerState::new(-half_window, ups, downs)
            }
            StateFamily::Localized { site } => WalkerState::new(site, vec![up], vec![down]),
        }
    }
}

/// The full position ⊗ chirality pure state.
///
/// `up_amps[i]` and `down_amps[i]` are the amplitudes `a_n` and `b_n` at site
/// `n = n_min + i`; sites outside the window are exactly zero. The total norm
/// is one within [`NORM_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct WalkerState {
    n_min: i64,
    up: Vec<Complex64>,
    down: Vec<Complex64>,
}

impl WalkerState {
    /// Wrap amplitude arrays, validating the norm and window invariants.
    pub fn new(n_min: i64, up: Vec<Complex64>, down: Vec<Complex64>) -> Result<Self> {
        if up.is_empty() || up.len() != down.len() {
            return Err(Error::InvalidParameter(format!(
                "amplitude arrays must be nonempty and of equal length, got {} and {}",
                up.len(),
                down.len()
            )));
        }
        if up.iter().chain(down.iter()).any(|z| !z.is_finite()) {
            return Err(Error::InvalidParameter(
                "amplitudes must be finite".to_string(),
            ));
        }
        let state = Self { n_min, up, down };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParameter(format!(
                "state norm must be 1 within {NORM_TOL:e}, got {norm}"
            )));
        }
        Ok(state)
    }

    /// Wrap amplitude arrays after rescaling them to unit norm.
    pub fn normalized(n_min: i64, mut up: Vec<Complex64>, mut down: Vec<Complex64>) -> Result<Self> {
        let total: f64 = up
            .iter()
            .chain(down.iter())
            .map(|z| z.norm_sqr())
            .sum();
        if total <= 0.0 || !total.is_finite() {
            return Err(Error::InvalidParameter(
                "cannot normalize a zero or non-finite state".to_string(),
            ));
        }
        let inv = total.sqrt().recip();
        up.iter_mut().for_each(|z| *z *= inv);
        down.iter_mut().for_each(|z| *z *= inv);
        Self::new(n_min, up, down)
    }

    /// Leftmost site of the window.
    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    /// Rightmost site of the window.
    pub fn n_max(&self) -> i64 {
        self.n_min + self.up.len() as i64 - 1
    }

    /// Number of sites in the window.
    pub fn window_len(&self) -> usize {
        self.up.len()
    }

    pub fn up_amps(&self) -> &[Complex64] {
        &self.up
    }

    pub fn down_amps(&self) -> &[Complex64] {
        &self.down
    }

    /// Up amplitude `a_n`; zero outside the window.
    pub fn amp_up(&self, n: i64) -> Complex64 {
        self.index_of(n).map_or(ZERO, |i| self.up[i])
    }

    /// Down amplitude `b_n`; zero outside the window.
    pub fn amp_down(&self, n: i64) -> Complex64 {
        self.index_of(n).map_or(ZERO, |i| self.down[i])
    }

    fn index_of(&self, n: i64) -> Option<usize> {
        if n < self.n_min || n > self.n_max() {
            None
        } else {
            Some((n - self.n_min) as usize)
        }
    }

    /// √(Σ_n |a_n|² + |b_n|²).
    pub fn norm(&self) -> f64 {
        self.up
            .iter()
            .chain(self.down.iter())
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Occupation probability |a_n|² + |b_n|² per window site.
    pub fn position_distribution(&self) -> Vec<f64> {
        self.up
            .iter()
            .zip(self.down.iter())
            .map(|(a, b)| a.norm_sqr() + b.norm_sqr())
            .collect()
    }

    /// Smallest site range carrying any nonzero amplitude, or `None` for the
    /// (unreachable through the public API) all-zero state.
    pub fn support(&self) -> Option<(i64, i64)> {
        let occupied = |i: usize| self.up[i] != ZERO || self.down[i] != ZERO;
        let first = (0..self.up.len()).find(|&i| occupied(i))?;
        let last = (0..self.up.len()).rfind(|&i| occupied(i))?;
        Some((self.n_min + first as i64, self.n_min + last as i64))
    }

    /// One walk step: coin rotation followed by the conditional shift.
    ///
    /// The returned window grows by one site on each side. Norm is preserved
    /// to machine precision.
    pub fn step(&self, coin: &CoinParams) -> WalkerState {
        let (s, c) = coin.theta().sin_cos();
        let len = self.up.len();
        let mut up = vec![ZERO; len + 2];
        let mut down = vec![ZERO; len + 2];
        for i in 0..len {
            let coined_up = c * self.up[i] + s * self.down[i];
            let coined_down = s * self.up[i] - c * self.down[i];
            up[i + 2] = coined_up; // site n -> n + 1
            down[i] = coined_down; // site n -> n - 1
        }
        WalkerState {
            n_min: self.n_min - 1,
            up,
            down,
        }
    }
}

/// Apply `steps` walk steps, invoking `observer` with `(t, state)` at t = 0
/// and after every step.
///
/// The amplitude arrays are pre-sized to the full light cone
/// `[n_min − steps, n_max + steps]` up front and double-buffered, so no
/// allocation happens inside the stepping loop and each step touches only the
/// light cone reached so far. The returned state carries the full light-cone
/// window.
pub fn evolve<F>(state: &WalkerState, coin: &CoinParams, steps: usize, mut observer: F) -> WalkerState
where
    F: FnMut(usize, &WalkerState),
{
    let pad = steps;
    let len0 = state.up.len();
    let full_len = len0 + 2 * pad;
    let mut cur = WalkerState {
        n_min: state.n_min - pad as i64,
        up: vec![ZERO; full_len],
        down: vec![ZERO; full_len],
    };
    cur.up[pad..pad + len0].copy_from_slice(&state.up);
    cur.down[pad..pad + len0].copy_from_slice(&state.down);
    let mut next = cur.clone();

    observer(0, &cur);

    let (s, c) = coin.theta().sin_cos();
    // Active index range: everything the light cone has reached.
    let (mut lo, mut hi) = (pad, pad + len0 - 1);
    for t in 1..=steps {
        lo -= 1;
        hi += 1;
        for i in lo..=hi {
            next.up[i] = if i >= 1 {
                c * cur.up[i - 1] + s * cur.down[i - 1]
            } else {
                ZERO
            };
            next.down[i] = if i + 1 < full_len {
                s * cur.up[i + 1] - c * cur.down[i + 1]
            } else {
                ZERO
            };
        }
        std::mem::swap(&mut cur, &mut next);
        observer(t, &cur);
    }
    cur
}
