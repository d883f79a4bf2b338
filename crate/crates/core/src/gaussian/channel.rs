use nalgebra::DMatrix;

use super::covariance::CovarianceMatrix;
use crate::error::{invalid, Result};

/// Thermal attenuator on one mode: `V' = X V X^T + Y` with `X = sqrt(eta)`
/// and `Y = (1 - eta)(2 n_th + 1)` on the mode's block.
///
/// `eta = 1` leaves the state untouched; `eta = 0` replaces the mode with a
/// thermal state of occupation `n_th`.
pub fn attenuation_channel(
    v: &CovarianceMatrix,
    mode: usize,
    eta: f64,
    n_th: f64,
) -> Result<CovarianceMatrix> {
    let n = v.n_modes();
    if mode >= n {
        return Err(invalid(format!("mode {mode} out of range for {n} modes")));
    }
    if !(0.0..=1.0).contains(&eta) {
        return Err(invalid(format!(
            "transmissivity eta = {eta} outside [0, 1]"
        )));
    }
    if !(n_th >= 0.0) || !n_th.is_finite() {
        return Err(invalid(format!(
            "thermal occupation n_th = {n_th} must be finite and nonnegative"
        )));
    }
    let dim = 2 * n;
    let mut x = DMatrix::identity(dim, dim);
    let mut y = DMatrix::zeros(dim, dim);
    let noise = (1.0 - eta) * (2.0 * n_th + 1.0);
    for k in [2 * mode, 2 * mode + 1] {
        x[(k, k)] = eta.sqrt();
        y[(k, k)] = noise;
    }
    CovarianceMatrix::from_rounded(&x * v.matrix() * x.transpose() + y)
}
