//! Reference implementations used only by tests.
//!
//! Everything here works on plain `nalgebra` matrices and is written
//! independently of `sideband-core`, so it can serve as an oracle for it.
//! Conventions match the library: quadratures ordered `(p0, q0, p1, q1, ...)`,
//! vacuum covariance `I`, symplectic form `J = [[0, 1], [-1, 0]]` per mode.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;

pub fn omega(n: usize) -> DMatrix<f64> {
    let mut w = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        w[(2 * k, 2 * k + 1)] = 1.0;
        w[(2 * k + 1, 2 * k)] = -1.0;
    }
    w
}

/// Two-mode squeezed vacuum on modes `(0, 1)`, written out in closed form.
pub fn tmsv(r: f64) -> DMatrix<f64> {
    let (c, s) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    DMatrix::from_row_slice(
        4,
        4,
        &[
            c, 0.0, s, 0.0, 0.0, c, 0.0, -s, s, 0.0, c, 0.0, 0.0, -s, 0.0, c,
        ],
    )
}

/// Real symplectic matrix mixing every mode: alternating layers of random
/// orthogonal-symplectic (passive) maps and single-mode squeezers.
pub fn random_symplectic<R: Rng>(rng: &mut R, n: usize, max_squeeze: f64) -> DMatrix<f64> {
    let mut s = DMatrix::identity(2 * n, 2 * n);
    for _ in 0..3 {
        s = random_passive(rng, n) * s;
        let mut sq = DMatrix::identity(2 * n, 2 * n);
        for k in 0..n {
            let r = rng.gen_range(-max_squeeze..max_squeeze);
            sq[(2 * k, 2 * k)] = (-r).exp();
            sq[(2 * k + 1, 2 * k + 1)] = r.exp();
        }
        s = sq * s;
    }
    random_passive(rng, n) * s
}

/// Passive map from a random unitary `U = X + iY`, embedded as
/// `[[X, -Y], [Y, X]]` in `(p, q)` blocks.
fn random_passive<R: Rng>(rng: &mut R, n: usize) -> DMatrix<f64> {
    // Gram-Schmidt on random complex columns
    let mut cols: Vec<Vec<(f64, f64)>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<(f64, f64)> = (0..n)
            .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        for u in &cols {
            // <u, v> = sum conj(u) v
            let (mut re, mut im) = (0.0, 0.0);
            for (a, b) in u.iter().zip(&v) {
                re += a.0 * b.0 + a.1 * b.1;
                im += a.0 * b.1 - a.1 * b.0;
            }
            for (a, b) in u.iter().zip(v.iter_mut()) {
                b.0 -= re * a.0 - im * a.1;
                b.1 -= re * a.1 + im * a.0;
            }
        }
        let norm = v.iter().map(|z| z.0 * z.0 + z.1 * z.1).sum::<f64>().sqrt();
        if norm > 1e-3 {
            cols.push(v.into_iter().map(|z| (z.0 / norm, z.1 / norm)).collect());
        }
    }
    let mut s = DMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        for i in 0..n {
            let (x, y) = cols[j][i];
            s[(2 * i, 2 * j)] = x;
            s[(2 * i, 2 * j + 1)] = -y;
            s[(2 * i + 1, 2 * j)] = y;
            s[(2 * i + 1, 2 * j + 1)] = x;
        }
    }
    s
}

/// Random physical covariance `S diag(nu) S^T`, returned with its symplectic
/// spectrum sorted ascending.
pub fn random_state<R: Rng>(rng: &mut R, n: usize) -> (DMatrix<f64>, Vec<f64>) {
    let mut nus: Vec<f64> = (0..n)
        .map(|_| 1.0 + rng.gen_range(0.0..3.0f64).powi(2))
        .collect();
    let s = random_symplectic(rng, n, 0.8);
    let mut d = DMatrix::zeros(2 * n, 2 * n);
    for (k, nu) in nus.iter().enumerate() {
        d[(2 * k, 2 * k)] = *nu;
        d[(2 * k + 1, 2 * k + 1)] = *nu;
    }
    let v = &s * d * s.transpose();
    nus.sort_by(f64::total_cmp);
    (0.5 * (&v + v.transpose()), nus)
}

/// Williamson normal form found by explicit construction.
pub struct Williamson {
    /// Symplectic eigenvalues, ascending.
    pub nu: Vec<f64>,
    /// Symplectic `S` with `S V S^T = diag(nu_1, nu_1, nu_2, nu_2, ...)`.
    pub s: DMatrix<f64>,
}

/// Brute-force Williamson decomposition of a positive-definite `V`.
///
/// With `K = V^{-1/2} J V^{-1/2}` antisymmetric, `-K^2` has eigenvalues
/// `1/nu^2`. For each unit eigenvector `e` of `-K^2` the partner
/// `f = -nu K e` completes a canonical pair; degenerate eigenspaces are
/// orthogonalized against the pairs already taken. Then
/// `S = D^{1/2} O^T V^{-1/2}` with `O = [e1 f1 e2 f2 ...]`.
pub fn williamson(v: &DMatrix<f64>) -> Option<Williamson> {
    let dim = v.nrows();
    let n = dim / 2;
    let eig = SymmetricEigen::new(v.clone());
    if eig.eigenvalues.iter().any(|&x| x <= 0.0) {
        return None;
    }
    let inv_sqrt = &eig.eigenvectors
        * DMatrix::from_diagonal(&eig.eigenvalues.map(|x| 1.0 / x.sqrt()))
        * eig.eigenvectors.transpose();
    let k = &inv_sqrt * omega(n) * &inv_sqrt;
    let m = -(&k * &k);
    let m = 0.5 * (&m + m.transpose());
    let me = SymmetricEigen::new(m);

    // largest 1/nu^2 first, i.e. smallest nu first
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| me.eigenvalues[b].total_cmp(&me.eigenvalues[a]));

    let mut basis: Vec<nalgebra::DVector<f64>> = Vec::with_capacity(dim);
    let mut nu = Vec::with_capacity(n);
    for &idx in &order {
        if nu.len() == n {
            break;
        }
        let mut e = me.eigenvectors.column(idx).into_owned();
        for b in &basis {
            let c = b.dot(&e);
            e -= b * c;
        }
        let norm = e.norm();
        if norm < 1e-6 {
            continue;
        }
        e /= norm;
        let value = me.eigenvalues[idx];
        let nu_k = 1.0 / value.sqrt();
        let f = -nu_k * (&k * &e);
        basis.push(e);
        basis.push(f);
        nu.push(nu_k);
    }
    if nu.len() != n {
        return None;
    }
    let o = DMatrix::from_columns(&basis);
    let mut d_half = DMatrix::zeros(dim, dim);
    for (j, x) in nu.iter().enumerate() {
        d_half[(2 * j, 2 * j)] = x.sqrt();
        d_half[(2 * j + 1, 2 * j + 1)] = x.sqrt();
    }
    let s = d_half * o.transpose() * inv_sqrt;
    Some(Williamson { nu, s })
}

impl Williamson {
    /// Largest entry of `|S V S^T - D|` and `|S J S^T - J|`.
    pub fn residual(&self, v: &DMatrix<f64>) -> f64 {
        let n = self.nu.len();
        let mut d = DMatrix::zeros(2 * n, 2 * n);
        for (k, x) in self.nu.iter().enumerate() {
            d[(2 * k, 2 * k)] = *x;
            d[(2 * k + 1, 2 * k + 1)] = *x;
        }
        let w = omega(n);
        let r1 = (&self.s * v * self.s.transpose() - d).amax();
        let r2 = (&self.s * &w * self.s.transpose() - w).amax();
        r1.max(r2)
    }
}

/// Flips the sign of `q` for every mode in `subset`.
pub fn transpose_modes(v: &DMatrix<f64>, subset: &[usize]) -> DMatrix<f64> {
    let mut t = DMatrix::identity(v.nrows(), v.ncols());
    for &m in subset {
        t[(2 * m + 1, 2 * m + 1)] = -1.0;
    }
    &t * v * &t
}

/// Pure-loss channel built as a dilation: mix `mode` with a vacuum
/// environment on a beam splitter of transmissivity `eta`, then drop the
/// environment.
pub fn loss_dilation(v: &DMatrix<f64>, mode: usize, eta: f64) -> DMatrix<f64> {
    let dim = v.nrows();
    let mut big = DMatrix::identity(dim + 2, dim + 2);
    big.view_mut((0, 0), (dim, dim)).copy_from(v);
    let mut bs = DMatrix::identity(dim + 2, dim + 2);
    let (t, r) = (eta.sqrt(), (1.0 - eta).sqrt());
    for q in 0..2 {
        let (a, e) = (2 * mode + q, dim + q);
        bs[(a, a)] = t;
        bs[(a, e)] = r;
        bs[(e, a)] = -r;
        bs[(e, e)] = t;
    }
    let out = &bs * big * bs.transpose();
    out.view((0, 0), (dim, dim)).into_owned()
}
