//! Deterministic random fixtures shared across unit tests.

use num_complex::Complex64;

use crate::reduced::QubitDensityMatrix;
use crate::walk::WalkerState;

/// Splitmix-style generator; keeps test fixtures reproducible without
/// threading a rand dependency through the crate.
pub(crate) struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self(seed.wrapping_add(0x9e3779b97f4a7c15))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [-1, 1).
    pub fn symmetric(&mut self) -> f64 {
        2.0 * self.unit() - 1.0
    }
}

/// Random unit-norm walker state on a window of the given size.
pub(crate) fn random_state(window: usize, seed: u64) -> WalkerState {
    let mut rng = TestRng::new(seed);
    let mut amps = |n: usize| -> Vec<Complex64> {
        (0..n)
            .map(|_| Complex64::new(rng.symmetric(), rng.symmetric()))
            .collect()
    };
    let up = amps(window);
    let down = amps(window);
    WalkerState::normalized(-(window as i64 / 2), up, down).unwrap()
}

/// Random valid density matrix, drawn as a Bloch vector uniform in the ball.
pub(crate) fn random_density(seed: u64) -> QubitDensityMatrix {
    let mut rng = TestRng::new(seed);
    loop {
        let (x, y, z) = (rng.symmetric(), rng.symmetric(), rng.symmetric());
        if x * x + y * y + z * z <= 1.0 {
            return QubitDensityMatrix::from_bloch(x, y, z).unwrap();
        }
    }
}

/// Random 2×2 unitary from two phases and a rotation angle.
pub(crate) fn random_unitary(seed: u64) -> [[Complex64; 2]; 2] {
    let mut rng = TestRng::new(seed);
    let theta = rng.unit() * std::f64::consts::PI;
    let (alpha, beta) = (
        rng.unit() * std::f64::consts::TAU,
        rng.unit() * std::f64::consts::TAU,
    );
    let (s, c) = (0.5 * theta).sin_cos();
    [
        [
            Complex64::from_polar(c, alpha),
            Complex64::from_polar(s, beta),
        ],
        [
            Complex64::from_polar(-s, -beta),
            Complex64::from_polar(c, -alpha),
        ],
    ]
}
