//! Experiment settings from command-line flags and optional key=value files.
//!
//! Both sources populate the same [`RawConfig`]; flags win over file values.
//! Keys match the long flag names (`theta`, `sigma`, `uniform`, `localized`,
//! `gamma`, `phi`, `steps`, `epsilon`, `record-every`, `out`, `force-thermo`,
//! `sigmas`), with `_` accepted in place of `-`. Lines starting with `#` are
//! comments.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::harness::ExperimentConfig;
use crate::walk::{ChiralitySpec, InitialStateSpec, StateFamily};

/// Partially specified experiment settings; `None` means "not given here".
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    pub theta: Option<f64>,
    pub sigma: Option<f64>,
    pub uniform: Option<u64>,
    pub localized: Option<i64>,
    pub gamma: Option<f64>,
    pub phi: Option<f64>,
    pub steps: Option<u64>,
    pub epsilon: Option<f64>,
    pub record_every: Option<u64>,
    pub out: Option<PathBuf>,
    pub force_thermo: Option<bool>,
    pub sigmas: Option<Vec<f64>>,
}

impl RawConfig {
    /// Parse a key=value file.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut raw = Self::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "{}:{}: expected key=value, got {line:?}",
                    path.display(),
                    lineno + 1
                ))
            })?;
            raw.set(key.trim(), value.trim()).map_err(|e| {
                Error::InvalidConfig(format!("{}:{}: {e}", path.display(), lineno + 1))
            })?;
        }
        Ok(raw)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
            value.parse().map_err(|_| {
                Error::InvalidConfig(format!("cannot parse {value:?} for key {key:?}"))
            })
        }
        match key.replace('_', "-").as_str() {
            "theta" => self.theta = Some(parse(key, value)?),
            "sigma" => self.sigma = Some(parse(key, value)?),
            "uniform" => self.uniform = Some(parse(key, value)?),
            "localized" => self.localized = Some(parse(key, value)?),
            "gamma" => self.gamma = Some(parse(key, value)?),
            "phi" => self.phi = Some(parse(key, value)?),
            "steps" => self.steps = Some(parse(key, value)?),
            "epsilon" => self.epsilon = Some(parse(key, value)?),
            "record-every" => self.record_every = Some(parse(key, value)?),
            "out" => self.out = Some(PathBuf::from(value)),
            "force-thermo" => self.force_thermo = Some(parse(key, value)?),
            "sigmas" => {
                let list: Result<Vec<f64>> = value
                    .split(',')
                    .map(|s| parse("sigmas", s.trim()))
                    .collect();
                self.sigmas = Some(list?);
            }
            other => {
                return Err(Error::InvalidConfig(format!("unknown key {other:?}")));
            }
        }
        Ok(())
    }

    /// Overlay `self` (the stronger source, e.g. flags) on `weaker`.
    pub fn or(self, weaker: RawConfig) -> RawConfig {
        RawConfig {
            theta: self.theta.or(weaker.theta),
            sigma: self.sigma.or(weaker.sigma),
            uniform: self.uniform.or(weaker.uniform),
            localized: self.localized.or(weaker.localized),
            gamma: self.gamma.or(weaker.gamma),
            phi: self.phi.or(weaker.phi),
            steps: self.steps.or(weaker.steps),
            epsilon: self.epsilon.or(weaker.epsilon),
            record_every: self.record_every.or(weaker.record_every),
            out: self.out.or(weaker.out),
            force_thermo: self.force_thermo.or(weaker.force_thermo),
            sigmas: self.sigmas.or(weaker.sigmas),
        }
    }

    fn family(&self) -> Result<StateFamily> {
        let given = [
            self.sigma.is_some(),
            self.uniform.is_some(),
            self.localized.is_some(),
        ]
        .iter()
        .filter(|&&x| x)
        .count();
        if given != 1 {
            return Err(Error::InvalidConfig(
                "exactly one of sigma, uniform, or localized must be given".into(),
            ));
        }
        Ok(if let Some(sigma) = self.sigma {
            StateFamily::Gaussian { sigma }
        } else if let Some(count) = self.uniform {
            StateFamily::Uniform {
                count: count as usize,
            }
        } else {
            StateFamily::Localized {
                site: self.localized.expect("one family is set"),
            }
        })
    }

    fn chirality(&self) -> Result<ChiralitySpec> {
        ChiralitySpec::new(self.gamma.unwrap_or(0.0), self.phi.unwrap_or(0.0))
            .map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    /// Resolve a full experiment for the `run` subcommand.
    ///
    /// The step count defaults to ⌈20σ⌉ for Gaussian runs (the packet
    /// separation time scales with the width); other families must state it.
    pub fn into_run_config(self) -> Result<ExperimentConfig> {
        let family = self.family()?;
        let initial = InitialStateSpec::new(family, self.chirality()?);
        let steps = match (self.steps, family) {
            (Some(steps), _) => steps as usize,
            (None, StateFamily::Gaussian { sigma }) if sigma > 0.0 => {
                (20.0 * sigma).ceil() as usize
            }
            (None, _) => {
                return Err(Error::InvalidConfig(
                    "steps is required for non-Gaussian initial states".into(),
                ))
            }
        };
        let mut config = ExperimentConfig::new(initial, steps);
        config.theta = self.theta.unwrap_or(config.theta);
        config.epsilon = self.epsilon.unwrap_or(config.epsilon);
        config.record_every = self.record_every.map_or(1, |k| k as usize);
        config.output_path = self.out;
        config.force_thermo = self.force_thermo.unwrap_or(false);
        Ok(config)
    }

    /// Resolve the base experiment and width list for the `sweep` subcommand.
    pub fn into_sweep_config(mut self) -> Result<(ExperimentConfig, Vec<f64>)> {
        let sigmas = self.sigmas.take().unwrap_or_else(|| vec![5.0, 10.0, 20.0, 30.0]);
        if self.uniform.is_some() || self.localized.is_some() {
            return Err(Error::InvalidConfig(
                "sweep varies the Gaussian width; uniform/localized do not apply".into(),
            ));
        }
        // The per-width family is substituted by the sweep itself; seed the
        // base with any positive width so steps defaulting still works.
        if self.sigma.is_none() {
            self.sigma = sigmas.first().copied().or(Some(1.0));
        }
        if self.steps.is_none() {
            // One shared budget long enough for the widest packet.
            let widest = sigmas.iter().copied().fold(self.sigma.unwrap(), f64::max);
            self.steps = Some((20.0 * widest).ceil() as u64);
        }
        let out = self.out.take();
        let mut config = self.into_run_config()?;
        config.output_path = out;
        Ok((config, sigmas))
    }
}
