use nalgebra::DMatrix;
use num_complex::Complex64;

use super::bipartition::Bipartition;
use crate::error::{invalid, Error, Result};

/// Largest tolerated `|V - V^T|` entry.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Relative tolerance when matching the doubly degenerate eigenvalues of `-(WV)^2`.
pub const PAIRING_TOL: f64 = 1e-8;

/// The symplectic form `W = (+) w`, `w = [[0, 1], [-1, 0]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    n_modes: usize,
    data: DMatrix<f64>,
}

impl SymplecticForm {
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.data
    }
}

pub fn symplectic_form(n_modes: usize) -> Result<SymplecticForm> {
    if n_modes == 0 {
        return Err(invalid("symplectic form needs at least one mode"));
    }
    let dim = 2 * n_modes;
    let mut data = DMatrix::zeros(dim, dim);
    for k in 0..n_modes {
        data[(2 * k, 2 * k + 1)] = 1.0;
        data[(2 * k + 1, 2 * k)] = -1.0;
    }
    Ok(SymplecticForm { n_modes, data })
}

/// Quadrature covariance matrix in shot-noise units (vacuum = identity).
///
/// Ordering is `(p1, q1, p2, q2, ...)` with `p = a + a^dag`,
/// `q = -i (a - a^dag)`. Construction rejects non-square, odd-sized,
/// non-finite or asymmetric data; it never symmetrizes silently.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    data: DMatrix<f64>,
}

impl CovarianceMatrix {
    pub fn new(data: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = data.shape();
        if rows != cols {
            return Err(invalid(format!(
                "covariance matrix is {rows}x{cols}, not square"
            )));
        }
        if rows == 0 || rows % 2 != 0 {
            return Err(invalid(format!(
                "covariance dimension {rows} is not a positive even number"
            )));
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(invalid("covariance matrix has non-finite entries"));
        }
        let asym = max_asymmetry(&data);
        if asym > SYMMETRY_TOL {
            return Err(invalid(format!(
                "covariance matrix is not symmetric (max |V - V^T| = {asym:.3e})"
            )));
        }
        Ok(Self { data })
    }

    /// Builds from data that is symmetric up to rounding, e.g. the result of
    /// a congruence `S V S^T`. Replaces the data with `(V + V^T) / 2`.
    pub(crate) fn from_rounded(data: DMatrix<f64>) -> Result<Self> {
        let sym = (&data + data.transpose()) * 0.5;
        Self::new(sym)
    }

    pub fn vacuum(n_modes: usize) -> Result<Self> {
        Self::thermal(n_modes, 1.0)
    }

    /// `variance * I`; `variance = 2 n_th + 1`.
    pub fn thermal(n_modes: usize, variance: f64) -> Result<Self> {
        if n_modes == 0 {
            return Err(invalid("covariance matrix needs at least one mode"));
        }
        Self::new(DMatrix::identity(2 * n_modes, 2 * n_modes) * variance)
    }

    pub fn n_modes(&self) -> usize {
        self.data.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.data
    }

    /// `S V S^T`.
    pub fn transformed(&self, s: &DMatrix<f64>) -> Result<Self> {
        if s.shape() != self.data.shape() {
            return Err(invalid(format!(
                "transformation is {:?}, covariance is {:?}",
                s.shape(),
                self.data.shape()
            )));
        }
        Self::from_rounded(s * &self.data * s.transpose())
    }

    /// Direct sum `self (+) other`, modes of `other` appended after ours.
    pub fn direct_sum(&self, other: &CovarianceMatrix) -> CovarianceMatrix {
        let (a, b) = (self.data.nrows(), other.data.nrows());
        let mut data = DMatrix::zeros(a + b, a + b);
        data.view_mut((0, 0), (a, a)).copy_from(&self.data);
        data.view_mut((a, a), (b, b)).copy_from(&other.data);
        CovarianceMatrix { data }
    }

    pub fn max_abs_diff(&self, other: &CovarianceMatrix) -> f64 {
        (&self.data - &other.data).amax()
    }
}

fn max_asymmetry(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

/// Symplectic eigenvalues in ascending order.
///
/// Computed as square roots of the eigenvalues of `-(WV)^2`, which come in
/// degenerate pairs; the pairs are matched after sorting and each pair must
/// agree to [`PAIRING_TOL`] (relative).
///
/// When `V` is positive definite, `V = L L^T` makes `-(WV)^2` similar to the
/// symmetric `K^T K` with `K = L^T W L`, and the spectrum is taken from that
/// symmetric form. Otherwise a general eigensolver is used.
pub fn symplectic_eigenvalues(v: &CovarianceMatrix) -> Result<Vec<f64>> {
    let n = v.n_modes();
    let w = symplectic_form(n)?.into_matrix();

    let mut values: Vec<f64> = match v.matrix().clone().cholesky() {
        Some(chol) => {
            let l = chol.l();
            let k = l.transpose() * &w * &l;
            let sym = k.transpose() * &k;
            let sym = (&sym + sym.transpose()) * 0.5;
            sym.symmetric_eigenvalues().iter().copied().collect()
        }
        None => {
            let wv = w * v.matrix();
            let m = -(&wv * &wv);
            let scale = m.amax().max(1.0);
            let eig = general_eigenvalues(&m).ok_or_else(|| {
                Error::NumericalDegeneracy(
                    "eigenvalue iteration on -(WV)^2 did not converge".into(),
                )
            })?;
            let mut re = Vec::with_capacity(2 * n);
            for z in eig {
                if z.im.abs() > PAIRING_TOL * scale.max(z.re.abs()) {
                    return Err(Error::NumericalDegeneracy(format!(
                        "eigenvalue {} {:+}i of -(WV)^2 is not real",
                        z.re, z.im
                    )));
                }
                re.push(z.re);
            }
            re
        }
    };
    values.sort_by(f64::total_cmp);
    let scale = values.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));

    let mut nus = Vec::with_capacity(n);
    for pair in values.chunks_exact(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let size = lo.abs().max(hi.abs()).max(1.0);
        if (hi - lo).abs() > PAIRING_TOL * size {
            return Err(Error::NumericalDegeneracy(format!(
                "eigenvalues {lo} and {hi} of -(WV)^2 do not pair"
            )));
        }
        if hi < -PAIRING_TOL * scale {
            return Err(Error::NumericalDegeneracy(format!(
                "negative eigenvalue {hi} of -(WV)^2"
            )));
        }
        nus.push((0.5 * (lo + hi)).max(0.0).sqrt());
    }
    Ok(nus)
}

/// Eigenvalues of a general real matrix, `None` if the QR iteration fails.
pub(crate) fn general_eigenvalues(m: &DMatrix<f64>) -> Option<Vec<Complex64>> {
    let n = m.nrows();
    let f = faer::Mat::<f64>::from_fn(n, m.ncols(), |i, j| m[(i, j)]);
    let eig = f.eigenvalues().ok()?;
    Some(
        eig.into_iter()
            .map(|z| Complex64::new(z.re, z.im))
            .collect(),
    )
}

pub fn min_symplectic_eigenvalue(v: &CovarianceMatrix) -> Result<f64> {
    symplectic_eigenvalues(v).map(|nus| nus[0])
}

/// Uncertainty-principle check `V + iW >= 0`, i.e. every symplectic
/// eigenvalue is at least `1 - tol`.
pub fn is_physical(v: &CovarianceMatrix, tol: f64) -> Result<bool> {
    if !(tol >= 0.0) {
        return Err(invalid(format!("tolerance must be nonnegative, got {tol}")));
    }
    Ok(min_symplectic_eigenvalue(v)? >= 1.0 - tol)
}

/// Flips the sign of `q` on every mode in `subset`: `Λ V Λ`.
pub fn partial_transpose(v: &CovarianceMatrix, subset: &[usize]) -> Result<CovarianceMatrix> {
    let n = v.n_modes();
    let mut flip = vec![false; 2 * n];
    for &mode in subset {
        if mode >= n {
            return Err(invalid(format!(
                "mode index {mode} out of range for {n} modes"
            )));
        }
        flip[2 * mode + 1] = true;
    }
    let mut data = v.matrix().clone();
    for i in 0..2 * n {
        for j in 0..2 * n {
            if flip[i] != flip[j] {
                data[(i, j)] = -data[(i, j)];
            }
        }
    }
    Ok(CovarianceMatrix { data })
}

/// Smallest symplectic eigenvalue of the covariance with side A transposed.
/// Below one certifies entanglement across the split.
pub fn pt_witness(v: &CovarianceMatrix, b: &Bipartition) -> Result<f64> {
    if b.n_modes() != v.n_modes() {
        return Err(invalid(format!(
            "bipartition over {} modes applied to a {}-mode state",
            b.n_modes(),
            v.n_modes()
        )));
    }
    min_symplectic_eigenvalue(&partial_transpose(v, b.side_a())?)
}

/// Logarithmic negativity `max(0, -ln nu_min)`.
pub fn log_negativity(nu_min: f64) -> Result<f64> {
    if !(nu_min > 0.0) {
        return Err(invalid(format!("nu_min must be positive, got {nu_min}")));
    }
    Ok((-nu_min.ln()).max(0.0))
}

/// `1 / sqrt(det V)`.
pub fn purity(v: &CovarianceMatrix) -> Result<f64> {
    let det = v.matrix().clone().lu().determinant();
    if !(det > 0.0) {
        return Err(invalid(format!(
            "covariance determinant {det} is not positive"
        )));
    }
    Ok(1.0 / det.sqrt())
}

/// Gaussian partial trace: keeps the listed modes, in the listed order.
pub fn marginal(v: &CovarianceMatrix, subset: &[usize]) -> Result<CovarianceMatrix> {
    if subset.is_empty() {
        return Err(invalid("marginal needs a nonempty subset"));
    }
    let n = v.n_modes();
    let mut seen = vec![false; n];
    for &mode in subset {
        if mode >= n {
            return Err(invalid(format!(
                "mode index {mode} out of range for {n} modes"
            )));
        }
        if std::mem::replace(&mut seen[mode], true) {
            return Err(invalid(format!("mode index {mode} repeated in subset")));
        }
    }
    let rows: Vec<usize> = subset.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
    let data = DMatrix::from_fn(rows.len(), rows.len(), |i, j| {
        v.matrix()[(rows[i], rows[j])]
    });
    Ok(CovarianceMatrix { data })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn single_mode(diag: [f64; 2]) -> CovarianceMatrix {
        CovarianceMatrix::new(DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(
            &diag,
        )))
        .unwrap()
    }

    #[test]
    fn symplectic_form_small_cases() {
        assert!(symplectic_form(0).is_err());
        let w1 = symplectic_form(1).unwrap().into_matrix();
        assert_eq!(w1, DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]));
        let w2 = symplectic_form(2).unwrap().into_matrix();
        let mut expect = DMatrix::zeros(4, 4);
        expect.view_mut((0, 0), (2, 2)).copy_from(&w1);
        expect.view_mut((2, 2), (2, 2)).copy_from(&w1);
        assert_eq!(w2, expect);
        let w6 = symplectic_form(6).unwrap().into_matrix();
        assert_eq!(&w6 * &w6, -DMatrix::<f64>::identity(12, 12));
        assert_eq!(w6.transpose(), -w6);
    }

    #[test]
    fn rejects_malformed_matrices() {
        assert!(CovarianceMatrix::new(DMatrix::identity(3, 3)).is_err());
        assert!(CovarianceMatrix::new(DMatrix::zeros(2, 4)).is_err());
        let mut m = DMatrix::identity(2, 2);
        m[(0, 1)] = 1e-9;
        assert!(CovarianceMatrix::new(m.clone()).is_err());
        m[(1, 0)] = 1e-9;
        assert!(CovarianceMatrix::new(m).is_ok());
        let mut bad = DMatrix::identity(2, 2);
        bad[(0, 0)] = f64::NAN;
        assert!(CovarianceMatrix::new(bad).is_err());
    }

    #[test]
    fn vacuum_and_thermal_spectra() {
        for n in 1..=6 {
            let nus = symplectic_eigenvalues(&CovarianceMatrix::vacuum(n).unwrap()).unwrap();
            assert_eq!(nus.len(), n);
            for nu in nus {
                assert_abs_diff_eq!(nu, 1.0, epsilon = 1e-12);
            }
        }
        let nus = symplectic_eigenvalues(&CovarianceMatrix::thermal(2, 3.0).unwrap()).unwrap();
        assert_abs_diff_eq!(nus[0], 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(nus[1], 3.0, epsilon = 1e-12);
    }

    #[test]
    fn squeezed_vacuum_is_pure() {
        // -(WV)^2 for diag(a, b) is diag(ab, ab); nu = sqrt(ab) = 1 here
        for r in [0.1f64, 0.5, 1.3] {
            let v = single_mode([(2.0 * r).exp(), (-2.0 * r).exp()]);
            let nus = symplectic_eigenvalues(&v).unwrap();
            assert_abs_diff_eq!(nus[0], 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn physicality() {
        assert!(is_physical(&CovarianceMatrix::vacuum(3).unwrap(), 1e-9).unwrap());
        assert!(!is_physical(&CovarianceMatrix::thermal(2, 0.5).unwrap(), 1e-9).unwrap());
        assert!(is_physical(&CovarianceMatrix::vacuum(1).unwrap(), -1.0).is_err());
    }

    #[test]
    fn partial_transpose_identity_and_range() {
        let v = single_mode([2.0, 0.7]);
        assert_eq!(partial_transpose(&v, &[]).unwrap(), v);
        assert!(partial_transpose(&v, &[1]).is_err());
    }

    #[test]
    fn log_negativity_values() {
        assert_eq!(log_negativity(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(
            log_negativity((-1.0f64).exp()).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_eq!(log_negativity(2.0).unwrap(), 0.0);
        assert!(log_negativity(0.0).is_err());
        assert!(log_negativity(-0.5).is_err());
    }

    #[test]
    fn purity_values() {
        assert_abs_diff_eq!(
            purity(&CovarianceMatrix::vacuum(6).unwrap()).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            purity(&CovarianceMatrix::thermal(1, 2.0).unwrap()).unwrap(),
            0.5,
            epsilon = 1e-12
        );
        let zero = CovarianceMatrix::new(DMatrix::zeros(2, 2)).unwrap();
        assert!(purity(&zero).is_err());
    }

    #[test]
    fn marginal_basics() {
        let v = CovarianceMatrix::vacuum(6).unwrap();
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(marginal(&v, &all).unwrap(), v);
        assert_eq!(
            marginal(&v, &[3]).unwrap().into_matrix(),
            DMatrix::identity(2, 2)
        );
        assert!(marginal(&v, &[]).is_err());
        assert!(marginal(&v, &[1, 1]).is_err());
        assert!(marginal(&v, &[6]).is_err());
    }
}
