//! Experiment harness: configurations, time-series runs, parameter sweeps,
//! figure reproduction, and the fast self-check suite.
//!
//! The `qwalk` binary is a thin CLI over this module; everything here is
//! plain library code so the same entry points are usable from tests and
//! from the Python bindings.

mod checks;
mod config;
mod figures;

pub use checks::{all_passed, run_checks, CheckOptions, CheckOutcome};
pub use config::RawConfig;
pub use figures::{reproduce_figure, Figure};

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::reduced::{reduce, BlochVector};
use crate::thermo::{alpha_of, relative_entropy, sgen_asymptotic, ThermoContext, TimeSeriesRecord};
use crate::walk::{evolve, CoinParams, InitialStateSpec, StateFamily};

/// Warning emitted (as a `#` comment line ahead of the CSV header) when the
/// thermodynamic analysis of a localized state is forced.
pub const LOCALIZED_WARNING: &str =
    "thermodynamic analysis of a localized initial state is outside the thermal-bath regime; interpret with care";

/// CSV column order; panels (a)/(b)/(c) of the reference figures are the
/// columns s_vn, q_over_T, and sgen_balance.
pub const CSV_HEADER: &str =
    "t,norm,s_vn,energy,heat_cum,q_over_T,sgen_balance,sgen_relent,bloch_x,bloch_y,bloch_z,cos_alpha_t";

/// A fully specified experiment.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    /// Coin bias angle; π/4 is the Hadamard walk.
    pub theta: f64,
    pub initial: InitialStateSpec,
    pub steps: usize,
    /// Energy scale of the entanglement Hamiltonian.
    pub epsilon: f64,
    /// CSV destination; `None` writes to standard output.
    pub output_path: Option<PathBuf>,
    pub record_every: usize,
    /// Run the thermodynamic analysis even for a localized initial state.
    pub force_thermo: bool,
}

impl ExperimentConfig {
    pub fn new(initial: InitialStateSpec, steps: usize) -> Self {
        Self {
            theta: std::f64::consts::FRAC_PI_4,
            initial,
            steps,
            epsilon: 1.0,
            output_path: None,
            record_every: 1,
            force_thermo: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::InvalidConfig("steps must be at least 1".into()));
        }
        if self.record_every == 0 || self.record_every > self.steps {
            return Err(Error::InvalidConfig(format!(
                "record_every must lie in [1, steps], got {} with steps = {}",
                self.record_every, self.steps
            )));
        }
        Ok(())
    }

    fn is_localized(&self) -> bool {
        matches!(self.initial.family, StateFamily::Localized { .. })
    }

    /// The warning attached to the run output, if any.
    pub fn warning(&self) -> Option<&'static str> {
        (self.is_localized() && self.force_thermo).then_some(LOCALIZED_WARNING)
    }
}

/// End-of-run digest of a single trajectory.
#[derive(Debug, Clone, Copy)]
pub struct RunSummary {
    pub alpha: f64,
    pub beta_eps: f64,
    pub sgen_final: f64,
    pub sgen_asymptotic_predicted: f64,
    pub s_vn_final: f64,
    pub heat_final: f64,
    /// Largest drop of sgen_balance between consecutive recorded steps
    /// (zero when the series is monotone).
    pub max_monotonicity_violation: f64,
    pub final_bloch_distance_to_eq: f64,
}

/// Evolve one trajectory, recording thermodynamic rows, without touching the
/// filesystem.
pub fn run_series(config: &ExperimentConfig) -> Result<(Vec<TimeSeriesRecord>, RunSummary)> {
    config.validate()?;
    if config.is_localized() && !config.force_thermo {
        return Err(Error::ThermoNotJustified);
    }
    let coin = CoinParams::new(config.theta)?;
    let alpha = alpha_of(config.theta, &config.initial.chirality);
    let ctx = ThermoContext::new(config.theta, config.epsilon, alpha)?;
    let initial = config.initial.build()?;

    let rho_0 = reduce(&initial);
    let e_0 = ctx.internal_energy(&rho_0);
    let d_0 = relative_entropy(&rho_0, ctx.rho_eq())
        .expect("rho_eq is full rank inside the guard band");

    let mut records = Vec::with_capacity(config.steps / config.record_every + 2);
    evolve(&initial, &coin, config.steps, |t, state| {
        if t % config.record_every != 0 && t != config.steps {
            return;
        }
        let rho = reduce(state);
        let s_vn = rho.von_neumann_entropy();
        let energy = ctx.internal_energy(&rho);
        let heat_cum = energy - e_0;
        let d_t = relative_entropy(&rho, ctx.rho_eq())
            .expect("rho_eq is full rank inside the guard band");
        let bloch = rho.bloch();
        let v = ctx.axis();
        records.push(TimeSeriesRecord {
            t,
            norm: state.norm(),
            s_vn,
            energy,
            heat_cum,
            q_over_t: ctx.beta() * heat_cum,
            sgen_balance: ctx.sgen_balance(s_vn, heat_cum),
            sgen_relent: d_0 - d_t,
            bloch,
            cos_alpha_t: bloch.x * v[0] + bloch.y * v[1] + bloch.z * v[2],
        });
    });

    let summary = summarize(&ctx, &records)?;
    Ok((records, summary))
}

fn summarize(ctx: &ThermoContext, records: &[TimeSeriesRecord]) -> Result<RunSummary> {
    let last = records.last().expect("a run records at least t = 0");
    let max_drop = records
        .windows(2)
        .map(|w| w[0].sgen_balance - w[1].sgen_balance)
        .fold(0.0f64, f64::max);
    let v = ctx.axis();
    let cos_a = ctx.alpha().cos();
    let eq_bloch = BlochVector {
        x: cos_a * v[0],
        y: cos_a * v[1],
        z: cos_a * v[2],
    };
    Ok(RunSummary {
        alpha: ctx.alpha(),
        beta_eps: ctx.beta_eps(),
        sgen_final: last.sgen_balance,
        sgen_asymptotic_predicted: sgen_asymptotic(ctx.alpha())?,
        s_vn_final: last.s_vn,
        heat_final: last.heat_cum,
        max_monotonicity_violation: max_drop,
        final_bloch_distance_to_eq: last.bloch.distance(&eq_bloch),
    })
}

/// Run one experiment and write its CSV time series to the configured
/// destination (file, or standard output when none is set).
pub fn run(config: &ExperimentConfig) -> Result<(Vec<TimeSeriesRecord>, RunSummary)> {
    let (records, summary) = run_series(config)?;
    match &config.output_path {
        Some(path) => {
            let file = File::create(path).map_err(|e| Error::io(path, e))?;
            let mut w = BufWriter::new(file);
            write_csv(&mut w, &records, config.warning()).map_err(|e| Error::io(path, e))?;
            w.flush().map_err(|e| Error::io(path, e))?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write_csv(&mut w, &records, config.warning())
                .map_err(|e| Error::io("<stdout>", e))?;
        }
    }
    Ok((records, summary))
}

/// 12 significant digits, deterministic across runs.
fn fmt(x: f64) -> String {
    format!("{x:.11e}")
}

/// Write the time series as CSV (UTF-8, Unix line endings, header row).
pub fn write_csv<W: Write>(
    w: &mut W,
    records: &[TimeSeriesRecord],
    warning: Option<&str>,
) -> io::Result<()> {
    if let Some(text) = warning {
        writeln!(w, "# WARNING: {text}")?;
    }
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.t,
            fmt(r.norm),
            fmt(r.s_vn),
            fmt(r.energy),
            fmt(r.heat_cum),
            fmt(r.q_over_t),
            fmt(r.sgen_balance),
            fmt(r.sgen_relent),
            fmt(r.bloch.x),
            fmt(r.bloch.y),
            fmt(r.bloch.z),
            fmt(r.cos_alpha_t),
        )?;
    }
    Ok(())
}

/// Result of one sweep trajectory; failures are recorded, not propagated.
#[derive(Debug)]
pub struct SweepEntry {
    pub sigma: f64,
    pub outcome: Result<RunSummary>,
}

/// Run the base experiment once per width in `sigmas` (Gaussian family, all
/// other settings shared). Trajectories are independent and run in parallel;
/// the output order matches the input order.
pub fn sweep(base: &ExperimentConfig, sigmas: &[f64]) -> Vec<SweepEntry> {
    sigmas
        .par_iter()
        .map(|&sigma| {
            let mut config = base.clone();
            config.initial =
                InitialStateSpec::new(StateFamily::Gaussian { sigma }, base.initial.chirality);
            config.output_path = None;
            SweepEntry {
                sigma,
                outcome: run_series(&config).map(|(_, summary)| summary),
            }
        })
        .collect()
}

pub const SWEEP_CSV_HEADER: &str = "sigma,status,alpha,beta_eps,sgen_final,sgen_asymptotic_predicted,s_vn_final,heat_final,max_monotonicity_violation,final_bloch_distance_to_eq,error";

/// Write sweep summaries as CSV, one row per width, error rows inline.
pub fn write_sweep_csv<W: Write>(w: &mut W, entries: &[SweepEntry]) -> io::Result<()> {
    writeln!(w, "{SWEEP_CSV_HEADER}")?;
    for entry in entries {
        match &entry.outcome {
            Ok(s) => writeln!(
                w,
                "{},ok,{},{},{},{},{},{},{},{},",
                fmt(entry.sigma),
                fmt(s.alpha),
                fmt(s.beta_eps),
                fmt(s.sgen_final),
                fmt(s.sgen_asymptotic_predicted),
                fmt(s.s_vn_final),
                fmt(s.heat_final),
                fmt(s.max_monotonicity_violation),
                fmt(s.final_bloch_distance_to_eq),
            )?,
            Err(e) => writeln!(
                w,
                "{},error,,,,,,,,,\"{}\"",
                fmt(entry.sigma),
                e.to_string().replace('"', "\"\"")
            )?,
        }
    }
    Ok(())
}

/// Human-readable digest of a run, for the CLI.
pub fn format_summary(summary: &RunSummary) -> String {
    format!(
        "alpha                      = {}\n\
         beta*eps                   = {}\n\
         sgen_final                 = {}\n\
         sgen_asymptotic_predicted  = {}\n\
         s_vn_final                 = {}\n\
         heat_final                 = {}\n\
         max_monotonicity_violation = {}\n\
         final_bloch_distance_to_eq = {}",
        fmt(summary.alpha),
        fmt(summary.beta_eps),
        fmt(summary.sgen_final),
        fmt(summary.sgen_asymptotic_predicted),
        fmt(summary.s_vn_final),
        fmt(summary.heat_final),
        fmt(summary.max_monotonicity_violation),
        fmt(summary.final_bloch_distance_to_eq),
    )
}
