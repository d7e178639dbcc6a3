//! The thermodynamic frame of a run.
//!
//! For wide initial position distributions the coin equilibrates to a state
//! that is Gibbs with respect to a fixed entanglement Hamiltonian
//! H' = −ε σ·v, v = (sinθ, 0, cosθ), at an effective inverse temperature set
//! by the angle α between the initial Bloch vector and v. This module builds
//! that frame and computes internal energy, heat, and the generated entropy
//! along the evolution by two routes: the entropy balance
//! S_gen = S_vN − Q/T, and the decrease of relative entropy to equilibrium.
//!
//! Sign convention: β is fixed by requiring exp(−βH')/Z to reproduce the
//! asymptotic reduced state, which gives β·ε = artanh(cos α) = ln cot(α/2).
//! This—rather than the opposite sign—makes the two S_gen routes agree
//! identically and keeps S_gen nonnegative.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mat2::{self, Mat2};
use crate::reduced::{BlochVector, QubitDensityMatrix};
use crate::walk::ChiralitySpec;

/// Default guard half-width around α = 0 and α = π where the thermal
/// description degenerates (T → 0, divergent relative entropy).
pub const DEFAULT_ALPHA_GUARD: f64 = 1e-3;

/// Eigenvalues of a reference state below this are treated as exact zeros
/// when deciding support in [`relative_entropy`].
const SUPPORT_EIGENVALUE_FLOOR: f64 = 1e-14;

/// The angle α between the initial Bloch vector and the Hamiltonian axis:
/// cos α = cosθ cosγ + sinθ sinγ cosφ.
pub fn alpha_of(theta: f64, chirality: &ChiralitySpec) -> f64 {
    let b = chirality.bloch();
    let cos_alpha = theta.cos() * b[2] + theta.sin() * b[0];
    cos_alpha.clamp(-1.0, 1.0).acos()
}

/// Total heat exchanged between two recorded energies: Q = E(t) − E(0).
pub fn heat_cumulative(e_t: f64, e_0: f64) -> f64 {
    e_t - e_0
}

/// Closed-form asymptotic generated entropy,
/// S_gen^∞ = ln 2 + cos α · ln tan(α/2) − ln sin α, in units of k_B.
///
/// Equals the von Neumann entropy of the equilibrium state for the same α.
pub fn sgen_asymptotic(alpha: f64) -> Result<f64> {
    sgen_asymptotic_with_guard(alpha, DEFAULT_ALPHA_GUARD)
}

pub fn sgen_asymptotic_with_guard(alpha: f64, guard: f64) -> Result<f64> {
    check_guard_band(alpha, guard)?;
    Ok(std::f64::consts::LN_2 + alpha.cos() * (0.5 * alpha).tan().ln() - alpha.sin().ln())
}

fn check_guard_band(alpha: f64, guard: f64) -> Result<()> {
    if !alpha.is_finite() || alpha < guard || alpha > std::f64::consts::PI - guard {
        return Err(Error::DegenerateTemperature { alpha, guard });
    }
    Ok(())
}

/// Relative entropy D(ρ‖σ) = tr(ρ ln ρ) − tr(ρ ln σ), in units of k_B.
///
/// Computed from the eigendecompositions of both arguments. Nonnegative up to
/// floating-point noise; zero iff ρ = σ. Fails with
/// [`Error::SupportMismatch`] when σ has a numerically zero eigenvalue in a
/// direction where ρ carries weight (the divergence the guard band protects
/// against).
pub fn relative_entropy(rho: &QubitDensityMatrix, sigma: &QubitDensityMatrix) -> Result<f64> {
    let ((r_hi, r_lo), _) = mat2::eigh(rho.entries());
    let mut tr_rho_ln_rho = 0.0;
    for lambda in [r_hi, r_lo] {
        let lambda = lambda.clamp(0.0, 1.0);
        if lambda > 0.0 {
            tr_rho_ln_rho += lambda * lambda.ln();
        }
    }

    let ((s_hi, s_lo), (w_hi, w_lo)) = mat2::eigh(sigma.entries());
    let mut tr_rho_ln_sigma = 0.0;
    for (s, w) in [(s_hi, &w_hi), (s_lo, &w_lo)] {
        let weight = mat2::expectation(rho.entries(), w);
        if s < SUPPORT_EIGENVALUE_FLOOR {
            if weight > 1e-12 {
                return Err(Error::SupportMismatch);
            }
            continue; // 0 · ln 0
        }
        tr_rho_ln_sigma += weight * s.ln();
    }

    Ok(tr_rho_ln_rho - tr_rho_ln_sigma)
}

/// The fixed thermodynamic frame of a run: entanglement Hamiltonian, inverse
/// temperature, and equilibrium state for a given (θ, ε, α).
///
/// Immutable after construction and freely shareable.
#[derive(Debug, Clone)]
pub struct ThermoContext {
    theta: f64,
    epsilon: f64,
    alpha: f64,
    beta: f64,
    t_ent: f64,
    axis: [f64; 3],
    hamiltonian: Mat2,
    rho_eq: QubitDensityMatrix,
}

impl ThermoContext {
    /// Build the frame with the default guard band.
    pub fn new(theta: f64, epsilon: f64, alpha: f64) -> Result<Self> {
        Self::with_guard(theta, epsilon, alpha, DEFAULT_ALPHA_GUARD)
    }

    /// Build the frame, rejecting α within `guard` of 0 or π.
    pub fn with_guard(theta: f64, epsilon: f64, alpha: f64, guard: f64) -> Result<Self> {
        if !theta.is_finite() || theta <= 0.0 || theta >= std::f64::consts::FRAC_PI_2 {
            return Err(Error::DegenerateDynamics { theta });
        }
        if !epsilon.is_finite() || epsilon <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "energy scale epsilon must be positive, got {epsilon}"
            )));
        }
        check_guard_band(alpha, guard)?;

        let (sin_t, cos_t) = theta.sin_cos();
        let axis = [sin_t, 0.0, cos_t];
        // H' = -epsilon * sigma . v  (also -epsilon times the coin matrix)
        let hamiltonian = [
            [
                Complex64::new(-epsilon * cos_t, 0.0),
                Complex64::new(-epsilon * sin_t, 0.0),
            ],
            [
                Complex64::new(-epsilon * sin_t, 0.0),
                Complex64::new(epsilon * cos_t, 0.0),
            ],
        ];

        // cos(pi/2) rounds to ~6e-17; snap so alpha = pi/2 gives beta = 0
        // and the maximally mixed equilibrium state exactly.
        let cos_a = alpha.cos();
        let cos_a = if cos_a.abs() < 1e-15 { 0.0 } else { cos_a };
        let beta_eps = cos_a.atanh(); // = ln cot(alpha/2)
        let beta = beta_eps / epsilon;
        let t_ent = if beta == 0.0 {
            f64::INFINITY
        } else {
            1.0 / beta
        };

        // Equilibrium state from the asymptotic reduced matrix ...
        let rho_eq = QubitDensityMatrix::from_bloch(cos_a * sin_t, 0.0, cos_a * cos_t)?;
        // ... verified against the Gibbs form exp(-beta H')/Z it must equal.
        let gibbs = gibbs_state(&hamiltonian, beta);
        let dev = mat2::max_entry_dist(rho_eq.entries(), gibbs.entries());
        if dev > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "equilibrium state failed the Gibbs self-consistency check (deviation {dev:e})"
            )));
        }

        Ok(Self {
            theta,
            epsilon,
            alpha,
            beta,
            t_ent,
            axis,
            hamiltonian,
            rho_eq,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Inverse temperature 1/(k_B T_ent), in units of 1/ε.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The dimensionless product β·ε = artanh(cos α).
    pub fn beta_eps(&self) -> f64 {
        self.beta * self.epsilon
    }

    /// Effective (entanglement) temperature; infinite at α = π/2.
    pub fn t_ent(&self) -> f64 {
        self.t_ent
    }

    /// Unit vector v = (sinθ, 0, cosθ) defining the Hamiltonian axis.
    pub fn axis(&self) -> [f64; 3] {
        self.axis
    }

    /// The entanglement Hamiltonian H' = −ε σ·v; eigenvalues ±ε.
    pub fn hamiltonian(&self) -> &Mat2 {
        &self.hamiltonian
    }

    /// The equilibrium state exp(−βH')/Z.
    pub fn rho_eq(&self) -> &QubitDensityMatrix {
        &self.rho_eq
    }

    /// Internal energy E = tr(ρ H') = −ε B·v, in units of ε.
    pub fn internal_energy(&self, rho: &QubitDensityMatrix) -> f64 {
        let b = rho.bloch();
        -self.epsilon * (b.x * self.axis[0] + b.y * self.axis[1] + b.z * self.axis[2])
    }

    /// Generated entropy by the entropy balance: S_gen = S_vN − β·Q.
    ///
    /// Assumes a pure initial state, S_vN(0) = 0.
    pub fn sgen_balance(&self, s_vn: f64, heat_cum: f64) -> f64 {
        s_vn - self.beta * heat_cum
    }

    /// Generated entropy by relative entropy to equilibrium:
    /// S_gen = D(ρ_0‖ρ_eq) − D(ρ_t‖ρ_eq).
    pub fn sgen_relent(
        &self,
        rho_0: &QubitDensityMatrix,
        rho_t: &QubitDensityMatrix,
    ) -> Result<f64> {
        Ok(relative_entropy(rho_0, &self.rho_eq)? - relative_entropy(rho_t, &self.rho_eq)?)
    }

    /// Deviation of the one-step Bloch motion from a π-rotation about the
    /// Hamiltonian axis: |B(t+1) − R_π,v B(t)|.
    ///
    /// The unitary part of the reduced dynamics is observed to be very close
    /// to that rotation; this is a diagnostic to report, not an identity to
    /// assert.
    pub fn rotation_diagnostic(&self, bloch_t: &BlochVector, bloch_t1: &BlochVector) -> f64 {
        let v = self.axis;
        let proj = bloch_t.x * v[0] + bloch_t.y * v[1] + bloch_t.z * v[2];
        // R_pi about v: b -> 2 (v.b) v - b
        let rotated = BlochVector {
            x: 2.0 * proj * v[0] - bloch_t.x,
            y: 2.0 * proj * v[1] - bloch_t.y,
            z: 2.0 * proj * v[2] - bloch_t.z,
        };
        bloch_t1.distance(&rotated)
    }

    /// Recompute exp(−βH')/Z from the stored β and Hamiltonian.
    ///
    /// Must coincide with [`Self::rho_eq`] entrywise; the check suite uses
    /// this as the self-consistency probe.
    pub fn gibbs_state(&self) -> QubitDensityMatrix {
        gibbs_state(&self.hamiltonian, self.beta)
    }

    /// Test hook: flip the sign of β while leaving ρ_eq untouched, breaking
    /// the balance/relative-entropy identity and the Gibbs self-consistency.
    #[doc(hidden)]
    pub fn corrupt_beta_sign(&mut self) {
        self.beta = -self.beta;
        self.t_ent = -self.t_ent;
    }
}

/// exp(−βH)/Z for a Hermitian 2×2 `h`, via its eigendecomposition.
fn gibbs_state(h: &Mat2, beta: f64) -> QubitDensityMatrix {
    let ((e_hi, e_lo), (v_hi, v_lo)) = mat2::eigh(h);
    // Subtract the ground energy before exponentiating.
    let w_hi = (-beta * (e_hi - e_lo)).exp();
    let w_lo = 1.0f64;
    let z = w_hi + w_lo;
    let mut entries = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = (w_hi / z) * v_hi[i] * v_hi[j].conj() + (w_lo / z) * v_lo[i] * v_lo[j].conj();
        }
    }
    QubitDensityMatrix::new(entries).expect("Gibbs state of a Hermitian matrix is a valid state")
}

/// One recorded step of a run: entropies, energy, heat, generated entropy by
/// both routes, and the Bloch coordinates.
///
/// Entropies are in units of k_B, energies in units of ε, and
/// `q_over_t = β·Q` is the entropy change due to heat transfer.
#[derive(Debug, Clone, Copy)]
pub struct TimeSeriesRecord {
    pub t: usize,
    pub norm: f64,
    pub s_vn: f64,
    pub energy: f64,
    pub heat_cum: f64,
    pub q_over_t: f64,
    pub sgen_balance: f64,
    pub sgen_relent: f64,
    pub bloch: BlochVector,
    /// B(t)·v, the cosine tracking how close the trajectory stays to the
    /// plane α = const.
    pub cos_alpha_t: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduced::reduce;
    use crate::testutil::random_density;
    use crate::walk::{evolve, CoinParams, InitialStateSpec, StateFamily};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI};

    const SGEN_INF_PI4: f64 = 0.416_495_530_699_687_4;

    fn ctx_pi4() -> ThermoContext {
        ThermoContext::new(FRAC_PI_4, 1.0, FRAC_PI_4).unwrap()
    }

    #[test]
    fn alpha_of_known_cases() {
        let up = ChiralitySpec::up();
        assert!((alpha_of(FRAC_PI_4, &up) - FRAC_PI_4).abs() < 1e-15);

        // chirality aligned with the axis: gamma = theta, phi = 0
        let aligned = ChiralitySpec::new(0.7, 0.0).unwrap();
        assert!(alpha_of(0.7, &aligned).abs() < 1e-7);

        // gamma = pi/2, phi = 0 for the Hadamard walk: cos(alpha) = sin(theta)
        let equator = ChiralitySpec::new(FRAC_PI_2, 0.0).unwrap();
        assert!((alpha_of(FRAC_PI_4, &equator) - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn context_hamiltonian_is_minus_epsilon_hadamard_at_pi_4() {
        let ctx = ctx_pi4();
        let h = ctx.hamiltonian();
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert!((h[0][0].re + inv_sqrt2).abs() < 1e-15);
        assert!((h[0][1].re + inv_sqrt2).abs() < 1e-15);
        assert!((h[1][0].re + inv_sqrt2).abs() < 1e-15);
        assert!((h[1][1].re - inv_sqrt2).abs() < 1e-15);
        // eigenvalues are exactly +-epsilon
        let ((hi, lo), _) = mat2::eigh(h);
        assert!((hi - 1.0).abs() < 1e-12 && (lo + 1.0).abs() < 1e-12);
    }

    #[test]
    fn context_at_alpha_pi_2_is_infinite_temperature() {
        let ctx = ThermoContext::new(FRAC_PI_4, 1.0, FRAC_PI_2).unwrap();
        assert_eq!(ctx.beta(), 0.0);
        assert!(ctx.t_ent().is_infinite());
        let expect = QubitDensityMatrix::maximally_mixed();
        assert!(mat2::max_entry_dist(ctx.rho_eq().entries(), expect.entries()) < 1e-15);
    }

    #[test]
    fn context_equilibrium_state_at_pi_4() {
        let ctx = ctx_pi4();
        let e = ctx.rho_eq().entries();
        assert!((e[0][0].re - 0.75).abs() < 1e-15);
        assert!((e[0][1].re - 0.25).abs() < 1e-15);
        assert!((e[1][0].re - 0.25).abs() < 1e-15);
        assert!((e[1][1].re - 0.25).abs() < 1e-15);
        assert!((ctx.beta_eps() - (1.0 + std::f64::consts::SQRT_2).ln()).abs() < 1e-14);
    }

    #[test]
    fn context_rejects_guard_band_violations() {
        for alpha in [0.0, 1e-4, PI - 1e-4, PI, -0.3, PI + 0.5] {
            match ThermoContext::new(FRAC_PI_4, 1.0, alpha) {
                Err(Error::DegenerateTemperature { .. }) => {}
                other => panic!("alpha = {alpha}: expected DegenerateTemperature, got {other:?}"),
            }
        }
        // custom guard widens the rejection region
        assert!(ThermoContext::with_guard(FRAC_PI_4, 1.0, 0.05, 0.1).is_err());
        assert!(ThermoContext::with_guard(FRAC_PI_4, 1.0, 0.05, 0.01).is_ok());
    }

    #[test]
    fn context_rejects_degenerate_dynamics_and_bad_epsilon() {
        for theta in [0.0, FRAC_PI_2, -0.2, 2.0] {
            match ThermoContext::new(theta, 1.0, FRAC_PI_4) {
                Err(Error::DegenerateDynamics { .. }) => {}
                other => panic!("theta = {theta}: expected DegenerateDynamics, got {other:?}"),
            }
        }
        assert!(ThermoContext::new(FRAC_PI_4, 0.0, FRAC_PI_4).is_err());
        assert!(ThermoContext::new(FRAC_PI_4, -1.0, FRAC_PI_4).is_err());
    }

    #[test]
    fn gibbs_self_consistency_over_a_parameter_grid() {
        for i in 1..8 {
            let theta = FRAC_PI_2 * i as f64 / 8.0;
            for j in 1..12 {
                let alpha = PI * j as f64 / 12.0;
                let ctx = ThermoContext::new(theta, 1.0, alpha).unwrap();
                let gibbs = gibbs_state(ctx.hamiltonian(), ctx.beta());
                assert!(
                    mat2::max_entry_dist(ctx.rho_eq().entries(), gibbs.entries()) < 1e-12,
                    "theta = {theta}, alpha = {alpha}"
                );
            }
        }
    }

    #[test]
    fn internal_energy_known_cases() {
        let ctx = ctx_pi4();
        assert!(ctx
            .internal_energy(&QubitDensityMatrix::maximally_mixed())
            .abs()
            < 1e-15);

        // ground state of H': Bloch vector along +v
        let ground =
            QubitDensityMatrix::from_bloch(ctx.axis()[0], ctx.axis()[1], ctx.axis()[2]).unwrap();
        assert!((ctx.internal_energy(&ground) + 1.0).abs() < 1e-14);

        // equilibrium state: E = -epsilon cos(alpha)
        let e_eq = ctx.internal_energy(ctx.rho_eq());
        assert!((e_eq + FRAC_PI_4.cos()).abs() < 1e-14);
    }

    #[test]
    fn internal_energy_equals_the_trace_formula() {
        let ctx = ThermoContext::new(0.9, 1.7, 1.2).unwrap();
        for seed in 0..30u64 {
            let rho = random_density(seed);
            let product = mat2::mul(rho.entries(), ctx.hamiltonian());
            let tr = mat2::trace(&product);
            assert!(tr.im.abs() < 1e-12);
            assert!((ctx.internal_energy(&rho) - tr.re).abs() < 1e-12, "seed {seed}");
        }
    }

    #[test]
    fn internal_energy_scales_with_epsilon() {
        let ctx = ThermoContext::new(FRAC_PI_4, 2.5, FRAC_PI_4).unwrap();
        let e_eq = ctx.internal_energy(ctx.rho_eq());
        assert!((e_eq + 2.5 * FRAC_PI_4.cos()).abs() < 1e-13);
        // beta*eps is dimensionless and unchanged
        assert!((ctx.beta_eps() - (1.0 + std::f64::consts::SQRT_2).ln()).abs() < 1e-14);
    }

    #[test]
    fn heat_cumulative_is_a_difference() {
        assert_eq!(heat_cumulative(0.3, 0.3), 0.0);
        assert!((heat_cumulative(-0.7, -0.5) + 0.2).abs() < 1e-15);
    }

    #[test]
    fn sgen_balance_known_cases() {
        let ctx = ctx_pi4();
        assert_eq!(ctx.sgen_balance(0.0, 0.0), 0.0);

        let infinite_t = ThermoContext::new(FRAC_PI_4, 1.0, FRAC_PI_2).unwrap();
        assert_eq!(infinite_t.sgen_balance(LN_2, 0.0), LN_2);
        // at beta = 0 heat does not contribute at all
        assert_eq!(infinite_t.sgen_balance(LN_2, 42.0), LN_2);
    }

    #[test]
    fn relative_entropy_of_equal_states_is_zero() {
        for seed in 0..20u64 {
            let rho = random_density(seed);
            if rho.spectrum().1 < 1e-12 {
                continue; // support condition needs full rank here
            }
            let d = relative_entropy(&rho, &rho).unwrap();
            assert!(d.abs() < 1e-12, "seed {seed}: {d}");
        }
    }

    #[test]
    fn relative_entropy_matches_scalar_formula_for_maximally_mixed() {
        // D(I/2 || rho_eq(alpha)) = -ln sin(alpha), independent of theta.
        let half = QubitDensityMatrix::maximally_mixed();
        for alpha in [0.3, FRAC_PI_4, 1.1, FRAC_PI_2, 2.4] {
            let ctx = ThermoContext::new(FRAC_PI_4, 1.0, alpha).unwrap();
            let d = relative_entropy(&half, ctx.rho_eq()).unwrap();
            assert!((d + alpha.sin().ln()).abs() < 1e-13, "alpha = {alpha}");
        }
        // spot value at alpha = pi/4: ln 2 / 2
        let ctx = ctx_pi4();
        let d = relative_entropy(&half, ctx.rho_eq()).unwrap();
        assert!((d - 0.5 * LN_2).abs() < 1e-14);
    }

    #[test]
    fn relative_entropy_matches_eigendecomposition_oracle() {
        use nalgebra::{Complex, Matrix2};
        let to_na = |m: &Mat2| {
            Matrix2::new(
                Complex::new(m[0][0].re, m[0][0].im),
                Complex::new(m[0][1].re, m[0][1].im),
                Complex::new(m[1][0].re, m[1][0].im),
                Complex::new(m[1][1].re, m[1][1].im),
            )
        };
        for seed in 0..50u64 {
            let rho = random_density(seed);
            let sigma = random_density(seed.wrapping_add(31337));
            if sigma.spectrum().1 < 1e-6 {
                continue;
            }
            // oracle: D = sum_i r_i ln r_i - sum_ij r_i |<r_i|s_j>|^2 ln s_j
            let er = to_na(rho.entries()).symmetric_eigen();
            let es = to_na(sigma.entries()).symmetric_eigen();
            let mut want = 0.0;
            for i in 0..2 {
                let r = er.eigenvalues[i].max(0.0);
                if r > 0.0 {
                    want += r * r.ln();
                }
                for j in 0..2 {
                    let overlap = er
                        .eigenvectors
                        .column(i)
                        .dotc(&es.eigenvectors.column(j))
                        .norm_sqr();
                    want -= r * overlap * es.eigenvalues[j].ln();
                }
            }
            let got = relative_entropy(&rho, &sigma).unwrap();
            assert!((got - want).abs() < 1e-10, "seed {seed}: {got} vs {want}");
        }
    }

    #[test]
    fn relative_entropy_is_nonnegative_on_random_pairs() {
        for seed in 0..1000u64 {
            let rho = random_density(seed);
            let sigma = random_density(seed.wrapping_add(99991));
            match relative_entropy(&rho, &sigma) {
                Ok(d) => assert!(d >= -1e-12, "seed {seed}: D = {d}"),
                Err(Error::SupportMismatch) => {} // sigma effectively pure
                Err(other) => panic!("seed {seed}: {other}"),
            }
        }
    }

    #[test]
    fn relative_entropy_detects_support_mismatch() {
        let pure = QubitDensityMatrix::from_bloch(0.0, 0.0, 1.0).unwrap();
        let mixed = QubitDensityMatrix::maximally_mixed();
        match relative_entropy(&mixed, &pure) {
            Err(Error::SupportMismatch) => {}
            other => panic!("expected SupportMismatch, got {other:?}"),
        }
        // the other direction is finite: D(pure || mixed) = ln 2
        let d = relative_entropy(&pure, &mixed).unwrap();
        assert!((d - LN_2).abs() < 1e-14);
    }

    #[test]
    fn sgen_relent_known_cases() {
        let ctx = ctx_pi4();
        let rho0 = QubitDensityMatrix::from_bloch(0.0, 0.0, 1.0).unwrap();
        assert_eq!(ctx.sgen_relent(&rho0, &rho0).unwrap(), 0.0);

        // rho_t = rho_eq gives the asymptotic value D(rho_0 || rho_eq),
        // which for gamma = 0 on the Hadamard walk is the closed form.
        let s_inf = ctx.sgen_relent(&rho0, ctx.rho_eq()).unwrap();
        assert!((s_inf - SGEN_INF_PI4).abs() < 1e-14);
        assert!(
            (s_inf - relative_entropy(&rho0, ctx.rho_eq()).unwrap()).abs() < 1e-15
        );
    }

    #[test]
    fn sgen_asymptotic_known_cases() {
        assert!((sgen_asymptotic(FRAC_PI_4).unwrap() - SGEN_INF_PI4).abs() < 1e-14);
        assert!((sgen_asymptotic(FRAC_PI_2).unwrap() - LN_2).abs() < 1e-15);
        assert!(matches!(
            sgen_asymptotic(1e-5),
            Err(Error::DegenerateTemperature { .. })
        ));
    }

    #[test]
    fn sgen_asymptotic_equals_equilibrium_entropy_across_guard_band() {
        let guard = DEFAULT_ALPHA_GUARD;
        for k in 0..100 {
            let alpha = guard + (PI - 2.0 * guard) * (k as f64 + 0.5) / 100.0;
            let ctx = ThermoContext::new(FRAC_PI_4, 1.0, alpha).unwrap();
            let closed = sgen_asymptotic(alpha).unwrap();
            let from_state = ctx.rho_eq().von_neumann_entropy();
            assert!(
                (closed - from_state).abs() < 1e-12,
                "alpha = {alpha}: {closed} vs {from_state}"
            );
        }
    }

    #[test]
    fn balance_and_relative_entropy_routes_agree_along_a_trajectory() {
        let theta = FRAC_PI_4;
        let chirality = ChiralitySpec::up();
        let spec = InitialStateSpec::new(StateFamily::Gaussian { sigma: 5.0 }, chirality);
        let ctx = ThermoContext::new(theta, 1.0, alpha_of(theta, &chirality)).unwrap();
        let initial = spec.build().unwrap();
        let rho0 = reduce(&initial);
        let e0 = ctx.internal_energy(&rho0);
        let mut max_dev = 0.0f64;
        evolve(&initial, &CoinParams::new(theta).unwrap(), 150, |_, state| {
            let rho = reduce(state);
            let balance =
                ctx.sgen_balance(rho.von_neumann_entropy(), ctx.internal_energy(&rho) - e0);
            let relent = ctx.sgen_relent(&rho0, &rho).unwrap();
            max_dev = max_dev.max((balance - relent).abs());
        });
        assert!(max_dev < 1e-10, "max deviation {max_dev:e}");
    }

    #[test]
    fn corrupted_beta_breaks_the_route_identity() {
        let theta = FRAC_PI_4;
        let chirality = ChiralitySpec::up();
        let spec = InitialStateSpec::new(StateFamily::Gaussian { sigma: 5.0 }, chirality);
        let mut ctx = ThermoContext::new(theta, 1.0, alpha_of(theta, &chirality)).unwrap();
        ctx.corrupt_beta_sign();
        let initial = spec.build().unwrap();
        let rho0 = reduce(&initial);
        let e0 = ctx.internal_energy(&rho0);
        let mut max_dev = 0.0f64;
        evolve(&initial, &CoinParams::new(theta).unwrap(), 50, |_, state| {
            let rho = reduce(state);
            let balance =
                ctx.sgen_balance(rho.von_neumann_entropy(), ctx.internal_energy(&rho) - e0);
            let relent = ctx.sgen_relent(&rho0, &rho).unwrap();
            max_dev = max_dev.max((balance - relent).abs());
        });
        assert!(max_dev > 1e-6, "corruption went undetected: {max_dev:e}");
    }

    #[test]
    fn rotation_diagnostic_geometry() {
        let ctx = ctx_pi4();
        let v = ctx.axis();

        // a point on the axis is fixed by the rotation
        let on_axis = BlochVector {
            x: 0.4 * v[0],
            y: 0.4 * v[1],
            z: 0.4 * v[2],
        };
        let other = BlochVector {
            x: 0.1,
            y: -0.2,
            z: 0.3,
        };
        let dev = ctx.rotation_diagnostic(&on_axis, &other);
        assert!((dev - other.distance(&on_axis)).abs() < 1e-14);

        // (0,1,0) is orthogonal to v, so it maps to (0,-1,0)
        let equator = BlochVector { x: 0.0, y: 1.0, z: 0.0 };
        let dev = ctx.rotation_diagnostic(&equator, &BlochVector { x: 0.0, y: -1.0, z: 0.0 });
        assert!(dev < 1e-15);
    }

    #[test]
    fn rotation_diagnostic_calibrated_on_reference_run() {
        // Hadamard walk, Gaussian sigma = 10, chirality |+>: the one-step
        // Bloch motion time-averaged over the run stays within the frozen
        // fraction of the mean Bloch length (measured 0.0024 on the
        // reference run; bound doubled for headroom).
        const MEAN_REL_DEVIATION_BOUND: f64 = 0.005;
        let theta = FRAC_PI_4;
        let chirality = ChiralitySpec::up();
        let spec = InitialStateSpec::new(StateFamily::Gaussian { sigma: 10.0 }, chirality);
        let ctx = ThermoContext::new(theta, 1.0, alpha_of(theta, &chirality)).unwrap();
        let mut prev: Option<BlochVector> = None;
        let mut dev_sum = 0.0;
        let mut mag_sum = 0.0;
        let mut count = 0usize;
        evolve(
            &spec.build().unwrap(),
            &CoinParams::new(theta).unwrap(),
            300,
            |_, state| {
                let b = reduce(state).bloch();
                if let Some(p) = prev {
                    dev_sum += ctx.rotation_diagnostic(&p, &b);
                    mag_sum += p.norm();
                    count += 1;
                }
                prev = Some(b);
            },
        );
        let rel = (dev_sum / count as f64) / (mag_sum / count as f64);
        assert!(
            rel < MEAN_REL_DEVIATION_BOUND,
            "time-averaged rotation deviation {rel} exceeds bound"
        );
    }

    #[test]
    fn energy_stays_near_the_alpha_plane_for_wide_gaussians() {
        // Frozen calibration: max_t |B(t).v - cos(alpha)| measured 0.0161 for
        // sigma = 10 (smaller for wider packets); bound 0.02.
        const PLANE_BOUND: f64 = 0.02;
        for sigma in [10.0, 20.0] {
            let theta = FRAC_PI_4;
            let chirality = ChiralitySpec::up();
            let spec = InitialStateSpec::new(StateFamily::Gaussian { sigma }, chirality);
            let ctx = ThermoContext::new(theta, 1.0, alpha_of(theta, &chirality)).unwrap();
            let cos_alpha = ctx.alpha().cos();
            let mut max_dev = 0.0f64;
            evolve(
                &spec.build().unwrap(),
                &CoinParams::new(theta).unwrap(),
                400,
                |_, state| {
                    let b = reduce(state).bloch();
                    let v = ctx.axis();
                    let cos_t = b.x * v[0] + b.y * v[1] + b.z * v[2];
                    max_dev = max_dev.max((cos_t - cos_alpha).abs());
                },
            );
            assert!(max_dev < PLANE_BOUND, "sigma = {sigma}: {max_dev}");
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn asymptotic_formula_is_symmetric_about_pi_2(alpha in 0.01f64..1.5) {
                let a = sgen_asymptotic(alpha).unwrap();
                let b = sgen_asymptotic(PI - alpha).unwrap();
                prop_assert!((a - b).abs() < 1e-12);
            }

            #[test]
            fn klein_inequality(seed in any::<u64>()) {
                let rho = random_density(seed);
                let sigma = random_density(seed.wrapping_add(1));
                if let Ok(d) = relative_entropy(&rho, &sigma) {
                    prop_assert!(d >= -1e-12);
                }
            }
        }
    }
}
