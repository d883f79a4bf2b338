use rayon::prelude::*;

use super::table::{witness_table, WitnessTable};
use crate::error::{invalid, Error, Result};
use crate::opo::{measured_covariance, OpoParams};

/// Model error at one grid point.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("sigma = {sigma}: {error}")]
pub struct SweepFailure {
    pub sigma: f64,
    pub error: Error,
}

pub type SweepPoint = std::result::Result<WitnessTable, SweepFailure>;

/// Witness table of the (optionally detected) output state at `params.sigma`.
pub fn evaluate(params: &OpoParams, detection: bool) -> Result<WitnessTable> {
    let v = measured_covariance(params, detection)?;
    witness_table(&v, params.sigma)
}

/// Evaluates every grid point in parallel; results come back in grid order
/// and a failing point does not stop the others.
pub fn sweep_sigma(params: &OpoParams, grid: &[f64], detection: bool) -> Result<Vec<SweepPoint>> {
    if grid.is_empty() {
        return Err(invalid("sigma grid is empty"));
    }
    if let Some(s) = grid.iter().find(|s| !(s.is_finite() && **s >= 0.0)) {
        return Err(invalid(format!(
            "sigma grid value {s} must be finite and nonnegative"
        )));
    }
    if grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(invalid("sigma grid must be sorted ascending"));
    }
    params.validate()?;
    Ok(grid
        .par_iter()
        .map(|&sigma| {
            evaluate(&params.with_sigma(sigma), detection)
                .map_err(|error| SweepFailure { sigma, error })
        })
        .collect())
}

/// `[0.2, 0.5, 0.9]` followed by 40 evenly spaced points on `[1.005, 1.75]`.
pub fn default_sigma_grid() -> Vec<f64> {
    let (start, stop, n) = (1.005, 1.75, 40);
    let step = (stop - start) / (n - 1) as f64;
    let mut grid = vec![0.2, 0.5, 0.9];
    grid.extend((0..n).map(|k| {
        if k == n - 1 {
            stop
        } else {
            start + step * k as f64
        }
    }));
    grid
}
