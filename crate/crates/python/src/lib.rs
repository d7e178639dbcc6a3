//! Python bindings for the walk simulator and its thermodynamic analysis.
//!
//! Exposes the main types (`WalkerState`, `QubitDensityMatrix`,
//! `ThermoContext`) and the experiment driver `run_experiment`, which mirrors
//! the `qwalk run` CLI. Build the extension with
//! `cargo build --release -p qwalk-thermo-python`; `python/smoke_test.py`
//! shows how to load and exercise it.

use num_complex::Complex64;
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use qwalk_thermo::error::Error;
use qwalk_thermo::harness::{self, ExperimentConfig};
use qwalk_thermo::reduced::BlochVector;
use qwalk_thermo::walk::{ChiralitySpec, CoinParams, InitialStateSpec, StateFamily};
use qwalk_thermo::{reduce, thermo, Mat2};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Io { .. } => PyIOError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn chirality(gamma: f64, phi: f64) -> PyResult<ChiralitySpec> {
    ChiralitySpec::new(gamma, phi).map_err(to_py_err)
}

fn mat_to_rows(m: &Mat2) -> Vec<Vec<Complex64>> {
    m.iter().map(|row| row.to_vec()).collect()
}

fn bloch_tuple(b: &BlochVector) -> (f64, f64, f64) {
    (b.x, b.y, b.z)
}

/// The full position x chirality pure state of the walker.
#[pyclass(name = "WalkerState", frozen)]
struct PyWalkerState {
    inner: qwalk_thermo::WalkerState,
}

#[pymethods]
impl PyWalkerState {
    /// Gaussian packet of width sigma centered at the origin.
    #[staticmethod]
    #[pyo3(signature = (sigma, gamma = 0.0, phi = 0.0))]
    fn gaussian(sigma: f64, gamma: f64, phi: f64) -> PyResult<Self> {
        let spec = InitialStateSpec::new(StateFamily::Gaussian { sigma }, chirality(gamma, phi)?);
        Ok(Self {
            inner: spec.build().map_err(to_py_err)?,
        })
    }

    /// Uniform superposition over `count` (odd) sites centered at the origin.
    #[staticmethod]
    #[pyo3(signature = (count, gamma = 0.0, phi = 0.0))]
    fn uniform(count: usize, gamma: f64, phi: f64) -> PyResult<Self> {
        let spec = InitialStateSpec::new(StateFamily::Uniform { count }, chirality(gamma, phi)?);
        Ok(Self {
            inner: spec.build().map_err(to_py_err)?,
        })
    }

    /// State localized on a single site.
    #[staticmethod]
    #[pyo3(signature = (site = 0, gamma = 0.0, phi = 0.0))]
    fn localized(site: i64, gamma: f64, phi: f64) -> PyResult<Self> {
        let spec = InitialStateSpec::new(StateFamily::Localized { site }, chirality(gamma, phi)?);
        Ok(Self {
            inner: spec.build().map_err(to_py_err)?,
        })
    }

    /// Wrap explicit amplitude arrays (unit norm required).
    #[staticmethod]
    fn from_amplitudes(n_min: i64, up: Vec<Complex64>, down: Vec<Complex64>) -> PyResult<Self> {
        Ok(Self {
            inner: qwalk_thermo::WalkerState::new(n_min, up, down).map_err(to_py_err)?,
        })
    }

    /// One walk step with coin angle theta.
    #[pyo3(signature = (theta = std::f64::consts::FRAC_PI_4))]
    fn step(&self, theta: f64) -> PyResult<Self> {
        let coin = CoinParams::new(theta).map_err(to_py_err)?;
        Ok(Self {
            inner: self.inner.step(&coin),
        })
    }

    /// Apply `steps` walk steps and return the final state.
    #[pyo3(signature = (steps, theta = std::f64::consts::FRAC_PI_4))]
    fn evolve(&self, steps: usize, theta: f64) -> PyResult<Self> {
        let coin = CoinParams::new(theta).map_err(to_py_err)?;
        Ok(Self {
            inner: qwalk_thermo::evolve(&self.inner, &coin, steps, |_, _| {}),
        })
    }

    /// Partial trace over position: the coin's reduced density matrix.
    fn reduce(&self) -> PyQubitDensityMatrix {
        PyQubitDensityMatrix {
            inner: reduce(&self.inner),
        }
    }

    fn norm(&self) -> f64 {
        self.inner.norm()
    }

    fn n_min(&self) -> i64 {
        self.inner.n_min()
    }

    fn n_max(&self) -> i64 {
        self.inner.n_max()
    }

    /// Smallest site range carrying nonzero amplitude.
    fn support(&self) -> Option<(i64, i64)> {
        self.inner.support()
    }

    fn amp_up(&self, n: i64) -> Complex64 {
        self.inner.amp_up(n)
    }

    fn amp_down(&self, n: i64) -> Complex64 {
        self.inner.amp_down(n)
    }

    fn up_amplitudes(&self) -> Vec<Complex64> {
        self.inner.up_amps().to_vec()
    }

    fn down_amplitudes(&self) -> Vec<Complex64> {
        self.inner.down_amps().to_vec()
    }

    /// Occupation probability per window site.
    fn position_distribution(&self) -> Vec<f64> {
        self.inner.position_distribution()
    }

    fn __repr__(&self) -> String {
        format!(
            "WalkerState(window=[{}, {}], norm={:.12})",
            self.inner.n_min(),
            self.inner.n_max(),
            self.inner.norm()
        )
    }
}

/// 2x2 density matrix of the coin in the (|+>, |->) basis.
#[pyclass(name = "QubitDensityMatrix", frozen)]
struct PyQubitDensityMatrix {
    inner: qwalk_thermo::QubitDensityMatrix,
}

#[pymethods]
impl PyQubitDensityMatrix {
    #[new]
    fn new(entries: [[Complex64; 2]; 2]) -> PyResult<Self> {
        Ok(Self {
            inner: qwalk_thermo::QubitDensityMatrix::new(entries).map_err(to_py_err)?,
        })
    }

    /// The state (I + B.sigma)/2 for a Bloch vector inside the unit ball.
    #[staticmethod]
    fn from_bloch(x: f64, y: f64, z: f64) -> PyResult<Self> {
        Ok(Self {
            inner: qwalk_thermo::QubitDensityMatrix::from_bloch(x, y, z).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn maximally_mixed() -> Self {
        Self {
            inner: qwalk_thermo::QubitDensityMatrix::maximally_mixed(),
        }
    }

    fn entries(&self) -> Vec<Vec<Complex64>> {
        mat_to_rows(self.inner.entries())
    }

    fn bloch(&self) -> (f64, f64, f64) {
        bloch_tuple(&self.inner.bloch())
    }

    /// Eigenvalues (lambda_plus, lambda_minus); they sum to one exactly.
    fn spectrum(&self) -> (f64, f64) {
        self.inner.spectrum()
    }

    /// Von Neumann entropy in units of k_B (natural log).
    fn von_neumann_entropy(&self) -> f64 {
        self.inner.von_neumann_entropy()
    }

    fn __repr__(&self) -> String {
        let e = self.inner.entries();
        format!(
            "QubitDensityMatrix([[{}, {}], [{}, {}]])",
            e[0][0], e[0][1], e[1][0], e[1][1]
        )
    }
}

/// The fixed thermodynamic frame: entanglement Hamiltonian, effective
/// temperature, and equilibrium state.
#[pyclass(name = "ThermoContext", frozen)]
struct PyThermoContext {
    inner: thermo::ThermoContext,
}

#[pymethods]
impl PyThermoContext {
    #[new]
    #[pyo3(signature = (theta, alpha, epsilon = 1.0))]
    fn new(theta: f64, alpha: f64, epsilon: f64) -> PyResult<Self> {
        Ok(Self {
            inner: thermo::ThermoContext::new(theta, epsilon, alpha).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.inner.theta()
    }

    #[getter]
    fn epsilon(&self) -> f64 {
        self.inner.epsilon()
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha()
    }

    /// Inverse temperature 1/(k_B T_ent).
    #[getter]
    fn beta(&self) -> f64 {
        self.inner.beta()
    }

    /// The dimensionless product beta * epsilon = artanh(cos alpha).
    #[getter]
    fn beta_eps(&self) -> f64 {
        self.inner.beta_eps()
    }

    /// Entanglement temperature; infinite at alpha = pi/2.
    #[getter]
    fn t_ent(&self) -> f64 {
        self.inner.t_ent()
    }

    /// Unit vector v = (sin theta, 0, cos theta).
    #[getter]
    fn axis(&self) -> (f64, f64, f64) {
        let v = self.inner.axis();
        (v[0], v[1], v[2])
    }

    fn hamiltonian(&self) -> Vec<Vec<Complex64>> {
        mat_to_rows(self.inner.hamiltonian())
    }

    fn rho_eq(&self) -> PyQubitDensityMatrix {
        PyQubitDensityMatrix {
            inner: *self.inner.rho_eq(),
        }
    }

    /// exp(-beta H')/Z recomputed from beta and H'; equals rho_eq().
    fn gibbs_state(&self) -> PyQubitDensityMatrix {
        PyQubitDensityMatrix {
            inner: self.inner.gibbs_state(),
        }
    }

    /// Internal energy tr(rho H') in units of epsilon.
    fn internal_energy(&self, rho: &PyQubitDensityMatrix) -> f64 {
        self.inner.internal_energy(&rho.inner)
    }

    /// Generated entropy by the balance S_vN - beta * Q.
    fn sgen_balance(&self, s_vn: f64, heat_cum: f64) -> f64 {
        self.inner.sgen_balance(s_vn, heat_cum)
    }

    /// Generated entropy by relative entropy to equilibrium.
    fn sgen_relent(
        &self,
        rho_0: &PyQubitDensityMatrix,
        rho_t: &PyQubitDensityMatrix,
    ) -> PyResult<f64> {
        self.inner
            .sgen_relent(&rho_0.inner, &rho_t.inner)
            .map_err(to_py_err)
    }

    /// Distance of bloch_t1 from the pi-rotation of bloch_t about the axis.
    fn rotation_diagnostic(&self, bloch_t: (f64, f64, f64), bloch_t1: (f64, f64, f64)) -> f64 {
        let b = |t: (f64, f64, f64)| BlochVector {
            x: t.0,
            y: t.1,
            z: t.2,
        };
        self.inner.rotation_diagnostic(&b(bloch_t), &b(bloch_t1))
    }

    fn __repr__(&self) -> String {
        format!(
            "ThermoContext(theta={:.6}, alpha={:.6}, beta_eps={:.6})",
            self.inner.theta(),
            self.inner.alpha(),
            self.inner.beta_eps()
        )
    }
}

/// One recorded step of a run.
#[pyclass(name = "TimeSeriesRecord", frozen, get_all)]
struct PyTimeSeriesRecord {
    t: usize,
    norm: f64,
    s_vn: f64,
    energy: f64,
    heat_cum: f64,
    q_over_t: f64,
    sgen_balance: f64,
    sgen_relent: f64,
    bloch: (f64, f64, f64),
    cos_alpha_t: f64,
}

#[pymethods]
impl PyTimeSeriesRecord {
    fn __repr__(&self) -> String {
        format!(
            "TimeSeriesRecord(t={}, s_vn={:.6}, sgen_balance={:.6})",
            self.t, self.s_vn, self.sgen_balance
        )
    }
}

/// End-of-run digest.
#[pyclass(name = "RunSummary", frozen, get_all)]
struct PyRunSummary {
    alpha: f64,
    beta_eps: f64,
    sgen_final: f64,
    sgen_asymptotic_predicted: f64,
    s_vn_final: f64,
    heat_final: f64,
    max_monotonicity_violation: f64,
    final_bloch_distance_to_eq: f64,
}

#[pymethods]
impl PyRunSummary {
    fn __repr__(&self) -> String {
        format!(
            "RunSummary(alpha={:.6}, sgen_final={:.6}, predicted={:.6})",
            self.alpha, self.sgen_final, self.sgen_asymptotic_predicted
        )
    }
}

/// The angle between the initial Bloch vector and the Hamiltonian axis.
#[pyfunction]
#[pyo3(signature = (theta, gamma = 0.0, phi = 0.0))]
fn alpha_of(theta: f64, gamma: f64, phi: f64) -> PyResult<f64> {
    Ok(thermo::alpha_of(theta, &chirality(gamma, phi)?))
}

/// The coin matrix ((cos, sin), (sin, -cos)) for an arbitrary angle.
#[pyfunction]
fn coin_matrix(theta: f64) -> Vec<Vec<Complex64>> {
    mat_to_rows(&qwalk_thermo::coin_matrix(theta))
}

/// Relative entropy D(rho || sigma) in units of k_B.
#[pyfunction]
fn relative_entropy(
    rho: &PyQubitDensityMatrix,
    sigma: &PyQubitDensityMatrix,
) -> PyResult<f64> {
    thermo::relative_entropy(&rho.inner, &sigma.inner).map_err(to_py_err)
}

/// Closed-form asymptotic generated entropy for the given alpha.
#[pyfunction]
fn sgen_asymptotic(alpha: f64) -> PyResult<f64> {
    thermo::sgen_asymptotic(alpha).map_err(to_py_err)
}

/// Run one experiment and return (records, summary), mirroring `qwalk run`.
#[pyfunction]
#[pyo3(signature = (
    theta = std::f64::consts::FRAC_PI_4,
    sigma = None,
    uniform = None,
    localized = None,
    gamma = 0.0,
    phi = 0.0,
    steps = None,
    epsilon = 1.0,
    record_every = 1,
    force_thermo = false,
))]
#[allow(clippy::too_many_arguments)]
fn run_experiment(
    theta: f64,
    sigma: Option<f64>,
    uniform: Option<usize>,
    localized: Option<i64>,
    gamma: f64,
    phi: f64,
    steps: Option<usize>,
    epsilon: f64,
    record_every: usize,
    force_thermo: bool,
) -> PyResult<(Vec<PyTimeSeriesRecord>, PyRunSummary)> {
    let family = match (sigma, uniform, localized) {
        (Some(sigma), None, None) => StateFamily::Gaussian { sigma },
        (None, Some(count), None) => StateFamily::Uniform { count },
        (None, None, Some(site)) => StateFamily::Localized { site },
        _ => {
            return Err(PyValueError::new_err(
                "exactly one of sigma, uniform, or localized must be given",
            ))
        }
    };
    let steps = match (steps, family) {
        (Some(steps), _) => steps,
        (None, StateFamily::Gaussian { sigma }) if sigma > 0.0 => (20.0 * sigma).ceil() as usize,
        (None, _) => {
            return Err(PyValueError::new_err(
                "steps is required for non-Gaussian initial states",
            ))
        }
    };
    let mut config = ExperimentConfig::new(
        InitialStateSpec::new(family, chirality(gamma, phi)?),
        steps,
    );
    config.theta = theta;
    config.epsilon = epsilon;
    config.record_every = record_every;
    config.force_thermo = force_thermo;

    let (records, summary) = harness::run_series(&config).map_err(to_py_err)?;
    let records = records
        .iter()
        .map(|r| PyTimeSeriesRecord {
            t: r.t,
            norm: r.norm,
            s_vn: r.s_vn,
            energy: r.energy,
            heat_cum: r.heat_cum,
            q_over_t: r.q_over_t,
            sgen_balance: r.sgen_balance,
            sgen_relent: r.sgen_relent,
            bloch: bloch_tuple(&r.bloch),
            cos_alpha_t: r.cos_alpha_t,
        })
        .collect();
    let summary = PyRunSummary {
        alpha: summary.alpha,
        beta_eps: summary.beta_eps,
        sgen_final: summary.sgen_final,
        sgen_asymptotic_predicted: summary.sgen_asymptotic_predicted,
        s_vn_final: summary.s_vn_final,
        heat_final: summary.heat_final,
        max_monotonicity_violation: summary.max_monotonicity_violation,
        final_bloch_distance_to_eq: summary.final_bloch_distance_to_eq,
    };
    Ok((records, summary))
}

/// Run the numerical self-check suite; returns (name, passed, detail) tuples.
#[pyfunction]
fn run_checks() -> Vec<(String, bool, String)> {
    harness::run_checks(&harness::CheckOptions::default())
        .into_iter()
        .map(|o| (o.name.to_string(), o.passed, o.detail))
        .collect()
}

#[pymodule]
fn qwalk_thermo_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyWalkerState>()?;
    m.add_class::<PyQubitDensityMatrix>()?;
    m.add_class::<PyThermoContext>()?;
    m.add_class::<PyTimeSeriesRecord>()?;
    m.add_class::<PyRunSummary>()?;
    m.add_function(wrap_pyfunction!(alpha_of, m)?)?;
    m.add_function(wrap_pyfunction!(coin_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(relative_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(sgen_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(run_checks, m)?)?;
    Ok(())
}
