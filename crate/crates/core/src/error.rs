//! Crate-wide error type.

use std::path::PathBuf;

/// Errors surfaced by state construction, the thermodynamic frame, and the
/// experiment harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A domain-type invariant was violated (bad σ, even uniform count, θ out
    /// of range, non-normalized amplitudes, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An experiment configuration failed validation.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// α is too close to 0 or π: the equilibrium state becomes pure, the
    /// effective temperature vanishes, and the relative entropy to it
    /// diverges.
    #[error("alpha = {alpha} rad lies outside the guard band ({guard}, pi - {guard}); the thermal description degenerates")]
    DegenerateTemperature { alpha: f64, guard: f64 },

    /// θ at 0 or π/2 makes the walk dynamics degenerate; the thermodynamic
    /// analysis requires θ strictly inside (0, π/2).
    #[error("theta = {theta} rad induces degenerate dynamics; the thermodynamic frame requires theta in (0, pi/2)")]
    DegenerateDynamics { theta: f64 },

    /// Relative entropy D(ρ‖σ) is undefined: σ has a (numerically) zero
    /// eigenvalue in a direction where ρ carries weight.
    #[error("relative entropy undefined: reference state lacks support where the state has weight")]
    SupportMismatch,

    /// The initial state is localized and the thermal-bath picture does not
    /// apply; rerun with the force-thermo override to analyze it anyway.
    #[error("thermodynamic analysis of a localized initial state is not justified; use force_thermo to override")]
    ThermoNotJustified,

    /// I/O failure, annotated with the path involved.
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Wrap an I/O error with the path it concerns.
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
