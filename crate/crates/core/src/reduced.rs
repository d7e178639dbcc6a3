//! The coin's reduced density matrix and its derived quantities.
//!
//! Tracing the position register out of the pure walker state leaves a 2×2
//! density matrix whose entries are single sums over the window:
//! ρ_++ = Σ|a_n|², ρ_+− = Σ a_n b_n*, ρ_−− = Σ|b_n|².

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mat2::{self, Mat2};
use crate::walk::WalkerState;

/// Validation tolerance for Hermiticity, unit trace, and spectrum bounds.
pub const DENSITY_TOL: f64 = 1e-12;

/// A 2×2 density matrix in the (|+⟩, |−⟩) basis: Hermitian, trace one,
/// positive semidefinite (all within [`DENSITY_TOL`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitDensityMatrix {
    entries: Mat2,
}

impl QubitDensityMatrix {
    /// Wrap a matrix, validating the density-matrix invariants.
    pub fn new(entries: Mat2) -> Result<Self> {
        let herm = (entries[0][1] - entries[1][0].conj()).norm()
            .max(entries[0][0].im.abs())
            .max(entries[1][1].im.abs());
        if herm > DENSITY_TOL {
            return Err(Error::InvalidParameter(format!(
                "density matrix must be Hermitian within {DENSITY_TOL:e} (deviation {herm:e})"
            )));
        }
        let tr = mat2::trace(&entries);
        if (tr.re - 1.0).abs() > DENSITY_TOL {
            return Err(Error::InvalidParameter(format!(
                "density matrix must have unit trace, got {}",
                tr.re
            )));
        }
        let ((hi, lo), _) = mat2::eigh(&entries);
        if lo < -DENSITY_TOL || hi > 1.0 + DENSITY_TOL {
            return Err(Error::InvalidParameter(format!(
                "density matrix eigenvalues must lie in [0, 1], got ({lo}, {hi})"
            )));
        }
        Ok(Self { entries })
    }

    /// The state (I + B·σ)/2 for a Bloch vector of norm at most one.
    pub fn from_bloch(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || norm > 1.0 + DENSITY_TOL {
            return Err(Error::InvalidParameter(format!(
                "Bloch vector norm must be at most 1, got {norm}"
            )));
        }
        Ok(Self {
            entries: [
                [
                    Complex64::new(0.5 * (1.0 + z), 0.0),
                    Complex64::new(0.5 * x, -0.5 * y),
                ],
                [
                    Complex64::new(0.5 * x, 0.5 * y),
                    Complex64::new(0.5 * (1.0 - z), 0.0),
                ],
            ],
        })
    }

    /// The maximally mixed state I/2.
    pub fn maximally_mixed() -> Self {
        Self {
            entries: mat2::scale(&mat2::identity(), 0.5),
        }
    }

    pub fn entries(&self) -> &Mat2 {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    /// Bloch vector under ρ = (I + B·σ)/2 with the standard Pauli matrices:
    /// x = 2 Re ρ_+−, y = −2 Im ρ_+−, z = ρ_++ − ρ_−−.
    pub fn bloch(&self) -> BlochVector {
        BlochVector {
            x: 2.0 * self.entries[0][1].re,
            y: -2.0 * self.entries[0][1].im,
            z: self.entries[0][0].re - self.entries[1][1].re,
        }
    }

    /// Eigenvalues (λ+, λ−) = ((1 ± |B|)/2), clamped so that λ± ∈ [0, 1] and
    /// λ+ + λ− = 1 exactly.
    pub fn spectrum(&self) -> (f64, f64) {
        let b = self.bloch().norm().min(1.0);
        let hi = 0.5 * (1.0 + b);
        (hi, 1.0 - hi)
    }

    /// Von Neumann entropy −Σ λ ln λ in units of k_B (natural log), with the
    /// convention 0·ln 0 = 0. Lies in [0, ln 2].
    pub fn von_neumann_entropy(&self) -> f64 {
        let (hi, lo) = self.spectrum();
        let mut s = 0.0;
        for lambda in [hi, lo] {
            if lambda > 0.0 {
                s -= lambda * lambda.ln();
            }
        }
        s
    }
}

/// Bloch vector of a qubit state; |B| ≤ 1, with equality iff pure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn distance(&self, other: &BlochVector) -> f64 {
        let (dx, dy, dz) = (self.x - other.x, self.y - other.y, self.z - other.z);
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

/// Partial trace over position: the coin's reduced density matrix.
///
/// Single pass over the window; for a unit-norm state the result satisfies
/// every [`QubitDensityMatrix`] invariant by construction.
pub fn reduce(state: &WalkerState) -> QubitDensityMatrix {
    let mut pp = 0.0f64;
    let mut mm = 0.0f64;
    let mut pm = Complex64::new(0.0, 0.0);
    for (a, b) in state.up_amps().iter().zip(state.down_amps()) {
        pp += a.norm_sqr();
        mm += b.norm_sqr();
        pm += a * b.conj();
    }
    QubitDensityMatrix {
        entries: [
            [Complex64::new(pp, 0.0), pm],
            [pm.conj(), Complex64::new(mm, 0.0)],
        ],
    }
}
