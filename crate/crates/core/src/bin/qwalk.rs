//! Command-line front end for the walk simulator and its thermodynamic
//! analysis.
//!
//! Exit codes: 0 success, 2 invalid configuration, 3 thermodynamic-model
//! rejection (localized initial state without --force-thermo, or a
//! degenerate temperature/dynamics), 4 numerical check failure, 1 I/O error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qwalk_thermo::error::Error;
use qwalk_thermo::harness::{
    self, format_summary, reproduce_figure, run_checks, CheckOptions, Figure, RawConfig,
};

#[derive(Parser)]
#[command(
    name = "qwalk",
    about = "Discrete-time quantum walk on the line with an entropy-production analysis of the coin",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and emit its CSV time series.
    Run(ExperimentArgs),
    /// Run one trajectory per Gaussian width and emit a summary CSV.
    Sweep(ExperimentArgs),
    /// Reproduce the Gaussian-packet figure data (sigma = 30, 20, 10, 5).
    ReproduceFig2(FigureArgs),
    /// Reproduce the uniform-superposition figure data (101 sites).
    ReproduceFig3(FigureArgs),
    /// Run the fast numerical self-check suite.
    Check(CheckArgs),
}

#[derive(Args)]
struct ExperimentArgs {
    /// Optional key=value config file; flags given here win over it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Coin bias angle in radians (default pi/4, the Hadamard walk).
    #[arg(long)]
    theta: Option<f64>,
    /// Gaussian initial state of this width.
    #[arg(long)]
    sigma: Option<f64>,
    /// Uniform initial state over this many (odd) sites.
    #[arg(long)]
    uniform: Option<u64>,
    /// Initial state localized on this site.
    #[arg(long)]
    localized: Option<i64>,
    /// Chirality polar angle in radians, in [0, pi].
    #[arg(long)]
    gamma: Option<f64>,
    /// Chirality azimuthal angle in radians, in [0, 2*pi).
    #[arg(long)]
    phi: Option<f64>,
    /// Number of walk steps (default for Gaussian runs: ceil(20*sigma)).
    #[arg(long)]
    steps: Option<u64>,
    /// Energy scale of the entanglement Hamiltonian.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Record every k-th step (the final step is always recorded).
    #[arg(long = "record-every")]
    record_every: Option<u64>,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Analyze a localized initial state despite the thermal picture not
    /// covering it.
    #[arg(long = "force-thermo")]
    force_thermo: bool,
    /// Widths for the sweep subcommand, comma separated.
    #[arg(long, value_delimiter = ',')]
    sigmas: Option<Vec<f64>>,
}

impl ExperimentArgs {
    fn merged(self) -> Result<RawConfig, Error> {
        let from_file = match &self.config {
            Some(path) => RawConfig::from_file(path)?,
            None => RawConfig::default(),
        };
        let flags = RawConfig {
            theta: self.theta,
            sigma: self.sigma,
            uniform: self.uniform,
            localized: self.localized,
            gamma: self.gamma,
            phi: self.phi,
            steps: self.steps,
            epsilon: self.epsilon,
            record_every: self.record_every,
            out: self.out,
            force_thermo: self.force_thermo.then_some(true),
            sigmas: self.sigmas,
        };
        Ok(flags.or(from_file))
    }
}

#[derive(Args)]
struct FigureArgs {
    /// Directory receiving the CSV files and gnuplot script.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct CheckArgs {
    /// Negative-control hook: corrupt the beta sign so the consistency
    /// checks must fail.
    #[arg(long, hide = true)]
    corrupt_beta_sign: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> ExitCode {
    match e {
        Error::InvalidParameter(_) | Error::InvalidConfig(_) => ExitCode::from(2),
        Error::ThermoNotJustified
        | Error::DegenerateTemperature { .. }
        | Error::DegenerateDynamics { .. } => ExitCode::from(3),
        Error::SupportMismatch => ExitCode::from(4),
        Error::Io { .. } => ExitCode::from(1),
    }
}

fn dispatch(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Run(args) => {
            let config = args.merged()?.into_run_config()?;
            if let Some(warning) = config.warning() {
                eprintln!("warning: {warning}");
            }
            let (_, summary) = harness::run(&config)?;
            if let Some(path) = &config.output_path {
                eprintln!("wrote {}", path.display());
            }
            eprintln!("{}", format_summary(&summary));
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep(args) => {
            let (base, sigmas) = args.merged()?.into_sweep_config()?;
            let entries = harness::sweep(&base, &sigmas);
            match &base.output_path {
                Some(path) => {
                    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
                    let mut w = std::io::BufWriter::new(file);
                    harness::write_sweep_csv(&mut w, &entries)
                        .map_err(|e| Error::io(path, e))?;
                    w.flush().map_err(|e| Error::io(path, e))?;
                    eprintln!("wrote {}", path.display());
                }
                None => {
                    let stdout = std::io::stdout();
                    harness::write_sweep_csv(&mut stdout.lock(), &entries)
                        .map_err(|e| Error::io("<stdout>", e))?;
                }
            }
            for entry in &entries {
                if let Err(e) = &entry.outcome {
                    eprintln!("sigma = {}: {e}", entry.sigma);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ReproduceFig2(args) => reproduce(Figure::Fig2, &args.out),
        Command::ReproduceFig3(args) => reproduce(Figure::Fig3, &args.out),
        Command::Check(args) => {
            let outcomes = run_checks(&CheckOptions {
                corrupt_beta_sign: args.corrupt_beta_sign,
            });
            for o in &outcomes {
                println!(
                    "check {:<24} {}  ({})",
                    o.name,
                    if o.passed { "PASS" } else { "FAIL" },
                    o.detail
                );
            }
            if harness::all_passed(&outcomes) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(4))
            }
        }
    }
}

fn reproduce(which: Figure, out: &std::path::Path) -> Result<ExitCode, Error> {
    let files = reproduce_figure(which, out)?;
    for f in &files {
        eprintln!("wrote {}", f.display());
    }
    Ok(ExitCode::SUCCESS)
}
