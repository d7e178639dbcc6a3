//! Reproduction of the reference figures: CSV data plus a gnuplot script.
//!
//! Figure 2: Hadamard walk from Gaussian packets of width σ = 30, 20, 10, 5
//! with chirality |+⟩. Figure 3: the same for a uniform superposition over
//! 101 sites. Panels: (a) von Neumann entropy, (b) entropy change due to
//! heat transfer, (c) generated entropy.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::harness::{run_series, write_csv, ExperimentConfig};
use crate::walk::{ChiralitySpec, InitialStateSpec, StateFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig2,
    Fig3,
}

const FIG_STEPS: usize = 600;
const FIG2_SIGMAS: [f64; 4] = [30.0, 20.0, 10.0, 5.0];

/// Write the figure's CSV series and gnuplot script into `out_dir`
/// (created if missing). Returns the paths written.
pub fn reproduce_figure(which: Figure, out_dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut written = Vec::new();

    let series: Vec<(String, ExperimentConfig)> = match which {
        Figure::Fig2 => FIG2_SIGMAS
            .iter()
            .map(|&sigma| {
                (
                    format!("fig2_sigma{sigma:.0}"),
                    ExperimentConfig::new(
                        InitialStateSpec::new(
                            StateFamily::Gaussian { sigma },
                            ChiralitySpec::up(),
                        ),
                        FIG_STEPS,
                    ),
                )
            })
            .collect(),
        Figure::Fig3 => vec![(
            "fig3_uniform101".to_string(),
            ExperimentConfig::new(
                InitialStateSpec::new(StateFamily::Uniform { count: 101 }, ChiralitySpec::up()),
                FIG_STEPS,
            ),
        )],
    };

    let mut curves = Vec::new();
    for (stem, config) in &series {
        let (records, _) = run_series(config)?;
        let path = out_dir.join(format!("{stem}.csv"));
        let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
        let mut w = BufWriter::new(file);
        write_csv(&mut w, &records, None).map_err(|e| Error::io(&path, e))?;
        w.flush().map_err(|e| Error::io(&path, e))?;
        curves.push((format!("{stem}.csv"), curve_title(stem)));
        written.push(path);
    }

    let (script_name, fig_name) = match which {
        Figure::Fig2 => ("fig2.gp", "fig2"),
        Figure::Fig3 => ("fig3.gp", "fig3"),
    };
    let script_path = out_dir.join(script_name);
    std::fs::write(&script_path, gnuplot_script(fig_name, &curves))
        .map_err(|e| Error::io(&script_path, e))?;
    written.push(script_path);
    Ok(written)
}

fn curve_title(stem: &str) -> String {
    match stem.split_once('_') {
        Some((_, tail)) if tail.starts_with("sigma") => format!("sigma = {}", &tail[5..]),
        Some((_, tail)) if tail.starts_with("uniform") => {
            format!("uniform over {} sites", &tail[7..])
        }
        _ => stem.to_string(),
    }
}

fn gnuplot_script(fig_name: &str, curves: &[(String, String)]) -> String {
    let mut s = String::new();
    s.push_str("# gnuplot script; run from this directory:  gnuplot ");
    s.push_str(fig_name);
    s.push_str(".gp\n");
    s.push_str("set datafile separator ','\n");
    s.push_str("set terminal pngcairo size 820,1100\n");
    s.push_str(&format!("set output '{fig_name}.png'\n"));
    s.push_str("set multiplot layout 3,1\n");
    s.push_str("set key bottom right\n");
    let panels = [
        ("(a) von Neumann entropy / k_B", 3),
        ("(b) entropy change due to heat transfer, Q/(k_B T_ent)", 6),
        ("(c) generated entropy / k_B", 7),
    ];
    for (i, (label, column)) in panels.iter().enumerate() {
        s.push_str(&format!("set ylabel \"{label}\"\n"));
        if i == panels.len() - 1 {
            s.push_str("set xlabel 't'\n");
        }
        let plots: Vec<String> = curves
            .iter()
            .map(|(file, title)| {
                format!("'{file}' every ::1 using 1:{column} with lines title '{title}'")
            })
            .collect();
        s.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
    }
    s.push_str("unset multiplot\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig3_writes_one_series_and_a_script() {
        let dir = tempfile::tempdir().unwrap();
        let files = reproduce_figure(Figure::Fig3, dir.path()).unwrap();
        assert_eq!(files.len(), 2);
        let csv = std::fs::read_to_string(&files[0]).unwrap();
        assert_eq!(csv.lines().count(), FIG_STEPS + 2); // header + 601 rows
        let script = std::fs::read_to_string(&files[1]).unwrap();
        assert!(script.contains("fig3_uniform101.csv"));
        assert!(script.contains("using 1:7"));
    }
}
