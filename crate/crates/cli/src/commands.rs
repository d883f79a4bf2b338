//! The four subcommands, as functions returning their textual output.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use sideband_core::analysis::{
    evaluate, sweep_sigma, BipartitionFamily, SweepFailure, WitnessTable,
};
use sideband_core::gaussian::min_symplectic_eigenvalue;
use sideband_core::opo::measured_covariance;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::plot::render_svg;
use crate::table::{format_sig, parse_csv, to_csv};

/// Tolerance below one still accepted as a physical symplectic eigenvalue.
pub const PHYSICAL_TOL: f64 = 1e-6;

fn ensure_writable_dir(path: &Path) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let meta = std::fs::metadata(dir).map_err(|e| CliError::io(dir, e))?;
    if !meta.is_dir() {
        return Err(CliError::io(
            dir,
            std::io::Error::new(std::io::ErrorKind::NotADirectory, "not a directory"),
        ));
    }
    if meta.permissions().readonly() {
        return Err(CliError::io(
            dir,
            std::io::Error::new(std::io::ErrorKind::PermissionDenied, "read-only directory"),
        ));
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

#[derive(Debug)]
pub struct SweepOutcome {
    pub csv_path: PathBuf,
    pub svg_path: Option<PathBuf>,
    pub rows: usize,
    /// Grid points where the model failed; their rows are missing.
    pub failures: Vec<SweepFailure>,
}

/// Evaluates the grid and writes the CSV (and the SVG when plots are on).
pub fn run_sweep(config: &RunConfig, output: Option<&Path>) -> Result<SweepOutcome, CliError> {
    let csv_path = output.unwrap_or(&config.output_path).to_path_buf();
    ensure_writable_dir(&csv_path)?;

    let params = config.model_params(config.sigma_grid[0]);
    let points = sweep_sigma(&params, &config.sigma_grid, config.include_detection)?;
    let mut tables: Vec<WitnessTable> = Vec::with_capacity(points.len());
    let mut failures = Vec::new();
    for point in points {
        match point {
            Ok(t) => tables.push(t),
            Err(f) => failures.push(f),
        }
    }
    let csv = to_csv(&tables);
    write_file(&csv_path, &csv)?;

    let svg_path = if config.emit_plots && !tables.is_empty() {
        let path = csv_path.with_extension("svg");
        let svg = render_svg(&parse_csv(&csv)?, None)?;
        write_file(&path, &svg)?;
        Some(path)
    } else {
        None
    };
    let rows = tables.iter().map(|t| t.entries.len()).sum();
    Ok(SweepOutcome {
        csv_path,
        svg_path,
        rows,
        failures,
    })
}

/// The 31 witnesses at one pump power, smallest first.
pub fn run_witness(config: &RunConfig, sigma: f64) -> Result<String, CliError> {
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(CliError::Usage(format!(
            "--sigma {sigma} must be finite and nonnegative"
        )));
    }
    let params = config.model_params(sigma);
    params.validate()?;
    let table = evaluate(&params, config.include_detection)?;
    Ok(format_witness(&table))
}

pub fn format_witness(table: &WitnessTable) -> String {
    let mut entries: Vec<_> = table.entries.iter().collect();
    entries.sort_by(|a, b| a.nu_min.total_cmp(&b.nu_min));
    let mut out = String::new();
    let _ = writeln!(
        out,
        "sigma = {}    physical min nu = {}",
        format_sig(table.sigma),
        format_sig(table.physical_min_nu)
    );
    let _ = writeln!(
        out,
        "{:<14} {:<15} {:>12} {:>12}",
        "bipartition", "family", "nu_min", "log_neg"
    );
    for e in &entries {
        let flag = if e.is_entangled() { "  ENTANGLED" } else { "" };
        let _ = writeln!(
            out,
            "{:<14} {:<15} {:>12} {:>12}{flag}",
            e.bipartition.label(),
            e.family.name(),
            format_sig(e.nu_min),
            format_sig(e.log_neg)
        );
    }
    let n = entries.iter().filter(|e| e.is_entangled()).count();
    let _ = writeln!(out, "{n} of {} bipartitions entangled", entries.len());
    out
}

/// Reads a sweep CSV and writes its plot; returns the SVG path.
pub fn run_plot(
    csv: &Path,
    family: Option<&str>,
    output: Option<&Path>,
) -> Result<PathBuf, CliError> {
    let family = family
        .map(|f| f.parse::<BipartitionFamily>())
        .transpose()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let out = output
        .map(Path::to_path_buf)
        .unwrap_or_else(|| csv.with_extension("svg"));
    ensure_writable_dir(&out)?;
    let text = std::fs::read_to_string(csv).map_err(|e| CliError::io(csv, e))?;
    let svg = render_svg(&parse_csv(&text)?, family)?;
    write_file(&out, &svg)?;
    Ok(out)
}

#[derive(Debug)]
pub struct CheckOutcome {
    pub report: String,
    pub passed: bool,
}

/// Physicality audit: smallest symplectic eigenvalue of the (detected)
/// output state at every grid point.
pub fn run_check(config: &RunConfig) -> CheckOutcome {
    let results: Vec<(f64, Result<f64, sideband_core::Error>)> = config
        .sigma_grid
        .par_iter()
        .map(|&sigma| {
            let nu = measured_covariance(&config.model_params(sigma), config.include_detection)
                .and_then(|v| min_symplectic_eigenvalue(&v));
            (sigma, nu)
        })
        .collect();
    let mut report = String::new();
    let mut passed = true;
    let _ = writeln!(report, "{:>12} {:>14}  status", "sigma", "min nu");
    for (sigma, nu) in results {
        match nu {
            Ok(nu) => {
                let ok = nu >= 1.0 - PHYSICAL_TOL;
                passed &= ok;
                let status = if ok { "ok" } else { "UNPHYSICAL" };
                let _ = writeln!(
                    report,
                    "{:>12} {:>14}  {status}",
                    format_sig(sigma),
                    format_sig(nu)
                );
            }
            Err(e) => {
                passed = false;
                let _ = writeln!(report, "{:>12} {:>14}  ERROR {e}", format_sig(sigma), "-");
            }
        }
    }
    let _ = writeln!(
        report,
        "{}",
        if passed {
            "all points physical"
        } else {
            "physicality check FAILED"
        }
    );
    CheckOutcome { report, passed }
}
