//! Elementary symplectic transformations on `n_modes` modes.
//!
//! All matrices act on the quadrature vector `(p1, q1, ..., pn, qn)` and are
//! applied to covariance matrices as `S V S^T`.

use nalgebra::DMatrix;

use super::covariance::symplectic_form;
use crate::error::{invalid, Result};

fn check_pair(n_modes: usize, (i, j): (usize, usize)) -> Result<()> {
    if i >= n_modes || j >= n_modes {
        return Err(invalid(format!(
            "modes ({i}, {j}) out of range for {n_modes} modes"
        )));
    }
    if i == j {
        return Err(invalid(format!(
            "two-mode operation needs distinct modes, got ({i}, {j})"
        )));
    }
    Ok(())
}

fn check_mode(n_modes: usize, mode: usize) -> Result<()> {
    if mode >= n_modes {
        return Err(invalid(format!(
            "mode {mode} out of range for {n_modes} modes"
        )));
    }
    Ok(())
}

/// Two-mode squeezer `a_i -> cosh r a_i + sinh r a_j^dag` (and `i <-> j`).
///
/// On vacuum it produces the two-mode squeezed vacuum with
/// `var(p_i) = cosh 2r`, `cov(p_i, p_j) = sinh 2r`, `cov(q_i, q_j) = -sinh 2r`.
pub fn two_mode_squeeze_symplectic(
    n_modes: usize,
    r: f64,
    modes: (usize, usize),
) -> Result<DMatrix<f64>> {
    check_pair(n_modes, modes)?;
    let (i, j) = modes;
    let (c, s) = (r.cosh(), r.sinh());
    let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
    m[(2 * i, 2 * i)] = c;
    m[(2 * i + 1, 2 * i + 1)] = c;
    m[(2 * j, 2 * j)] = c;
    m[(2 * j + 1, 2 * j + 1)] = c;
    m[(2 * i, 2 * j)] = s;
    m[(2 * j, 2 * i)] = s;
    m[(2 * i + 1, 2 * j + 1)] = -s;
    m[(2 * j + 1, 2 * i + 1)] = -s;
    Ok(m)
}

/// Beam splitter `a_i -> cos t a_i + sin t a_j`, `a_j -> -sin t a_i + cos t a_j`.
///
/// `theta = pi/2` swaps the modes with a sign flip on the second:
/// `a_i -> a_j`, `a_j -> -a_i`.
pub fn beam_splitter_symplectic(
    n_modes: usize,
    theta: f64,
    modes: (usize, usize),
) -> Result<DMatrix<f64>> {
    check_pair(n_modes, modes)?;
    let (i, j) = modes;
    let (c, s) = (theta.cos(), theta.sin());
    let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
    for quad in 0..2 {
        let (a, b) = (2 * i + quad, 2 * j + quad);
        m[(a, a)] = c;
        m[(a, b)] = s;
        m[(b, a)] = -s;
        m[(b, b)] = c;
    }
    Ok(m)
}

/// Phase rotation `a -> e^{-i phi} a` on one mode.
pub fn phase_rotation_symplectic(n_modes: usize, phi: f64, mode: usize) -> Result<DMatrix<f64>> {
    check_mode(n_modes, mode)?;
    let (c, s) = (phi.cos(), phi.sin());
    let k = 2 * mode;
    let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
    m[(k, k)] = c;
    m[(k, k + 1)] = s;
    m[(k + 1, k)] = -s;
    m[(k + 1, k + 1)] = c;
    Ok(m)
}

/// Single-mode squeezer `diag(e^{-r}, e^{r})` on `(p, q)` of one mode.
pub fn single_mode_squeeze_symplectic(n_modes: usize, r: f64, mode: usize) -> Result<DMatrix<f64>> {
    check_mode(n_modes, mode)?;
    let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
    m[(2 * mode, 2 * mode)] = (-r).exp();
    m[(2 * mode + 1, 2 * mode + 1)] = r.exp();
    Ok(m)
}

/// `max |S W S^T - W|`.
pub fn symplectic_defect(s: &DMatrix<f64>) -> Result<f64> {
    if !s.is_square() || !s.nrows().is_multiple_of(2) {
        return Err(invalid(format!(
            "{:?} is not a square even-sized matrix",
            s.shape()
        )));
    }
    let w = symplectic_form(s.nrows() / 2)?.into_matrix();
    Ok((s * &w * s.transpose() - w).amax())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::CovarianceMatrix;
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_parameters_are_identity() {
        let id = DMatrix::<f64>::identity(6, 6);
        assert_eq!(two_mode_squeeze_symplectic(3, 0.0, (0, 2)).unwrap(), id);
        assert_eq!(beam_splitter_symplectic(3, 0.0, (1, 2)).unwrap(), id);
        assert_eq!(phase_rotation_symplectic(3, 0.0, 1).unwrap(), id);
    }

    #[test]
    fn symplectic_condition() {
        for s in [
            two_mode_squeeze_symplectic(3, 0.7, (0, 2)).unwrap(),
            beam_splitter_symplectic(3, 0.4, (2, 1)).unwrap(),
            phase_rotation_symplectic(3, 1.1, 2).unwrap(),
            single_mode_squeeze_symplectic(3, -0.3, 0).unwrap(),
        ] {
            assert!(symplectic_defect(&s).unwrap() < 1e-12);
        }
    }

    #[test]
    fn identical_modes_rejected() {
        assert!(two_mode_squeeze_symplectic(2, 0.5, (1, 1)).is_err());
        assert!(beam_splitter_symplectic(2, 0.5, (0, 0)).is_err());
        assert!(beam_splitter_symplectic(2, 0.5, (0, 2)).is_err());
        assert!(phase_rotation_symplectic(2, 0.5, 2).is_err());
    }

    #[test]
    fn tmsv_epr_variance() {
        let s = two_mode_squeeze_symplectic(2, 0.5, (0, 1)).unwrap();
        let v = CovarianceMatrix::vacuum(2)
            .unwrap()
            .transformed(&s)
            .unwrap();
        let m = v.matrix();
        // var(p1 - p2) / 2
        let epr = (m[(0, 0)] + m[(2, 2)] - 2.0 * m[(0, 2)]) / 2.0;
        assert_abs_diff_eq!(epr, (-1.0f64).exp(), epsilon = 1e-12);
        assert_abs_diff_eq!(m[(0, 0)], 1.0f64.cosh(), epsilon = 1e-12);
    }

    #[test]
    fn quarter_wave_beam_splitter_swaps() {
        let s = beam_splitter_symplectic(2, std::f64::consts::FRAC_PI_2, (0, 1)).unwrap();
        let v = CovarianceMatrix::new(DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(
            &[2.0, 3.0, 5.0, 7.0],
        )))
        .unwrap();
        let out = v.transformed(&s).unwrap();
        let diag: Vec<f64> = out.matrix().diagonal().iter().copied().collect();
        for (got, want) in diag.iter().zip([5.0, 7.0, 2.0, 3.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn beam_splitter_conserves_block_trace() {
        let v = CovarianceMatrix::new(DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(
            &[1.5, 0.8, 4.0, 0.3, 2.0, 2.0],
        )))
        .unwrap();
        for theta in [0.1, 0.9, 2.3] {
            let out = v
                .transformed(&beam_splitter_symplectic(3, theta, (0, 1)).unwrap())
                .unwrap();
            let block = |m: &DMatrix<f64>| (0..4).map(|k| m[(k, k)]).sum::<f64>();
            assert_abs_diff_eq!(block(out.matrix()), block(v.matrix()), epsilon = 1e-12);
            assert_abs_diff_eq!(out.matrix()[(4, 4)], 2.0, epsilon = 1e-15);
        }
    }
}
