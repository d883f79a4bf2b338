//! Quadratic Hamiltonians over sideband and phonon modes.
//!
//! A quadratic Hamiltonian (units of hbar, rates in s^-1) is stored as
//!
//! ```text
//! H = sum_jk M_jk a_j^dag a_k + 1/2 sum_jk (N_jk a_j^dag a_k^dag + conj(N_jk) a_j a_k)
//! ```
//!
//! with `M` Hermitian ("hopping", beam-splitter type) and `N` symmetric
//! ("pairing", two-mode squeezing type). It generates
//! `da/dt = -i M a - i N a^dag`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::mean_field::MeanFields;
use super::params::OpoParams;
use crate::error::{invalid, Result};
use crate::gaussian::{symplectic_form, Carrier, ModeLabel, Sideband, SIDEBAND_MODES};

#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticHamiltonian {
    hopping: DMatrix<Complex64>,
    pairing: DMatrix<Complex64>,
}

/// Kind of a bilinear coupling between two distinct modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CouplingKind {
    BeamSplitter,
    TwoModeSqueezing,
}

impl QuadraticHamiltonian {
    pub fn zeros(n_modes: usize) -> Self {
        Self {
            hopping: DMatrix::zeros(n_modes, n_modes),
            pairing: DMatrix::zeros(n_modes, n_modes),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.hopping.nrows()
    }

    pub fn hopping(&self) -> &DMatrix<Complex64> {
        &self.hopping
    }

    pub fn pairing(&self) -> &DMatrix<Complex64> {
        &self.pairing
    }

    /// Adds `c a_j^dag a_k + h.c.`; on the diagonal adds `Re(c) a_j^dag a_j`.
    pub fn add_hopping(&mut self, j: usize, k: usize, c: Complex64) {
        if j == k {
            self.hopping[(j, j)] += c.re;
        } else {
            self.hopping[(j, k)] += c;
            self.hopping[(k, j)] += c.conj();
        }
    }

    /// Adds `c a_j^dag a_k^dag + h.c.` for `j != k`.
    pub fn add_pairing(&mut self, j: usize, k: usize, c: Complex64) {
        assert_ne!(j, k, "single-mode squeezing is not used here");
        self.pairing[(j, k)] += c;
        self.pairing[(k, j)] += c;
    }

    /// `self + other`, with `other` acting on the first `other.n_modes()` modes.
    pub fn embed_add(&mut self, other: &QuadraticHamiltonian) -> Result<()> {
        let m = other.n_modes();
        if m > self.n_modes() {
            return Err(invalid(format!(
                "cannot embed {m} modes into {}",
                self.n_modes()
            )));
        }
        let mut h = self.hopping.view_mut((0, 0), (m, m));
        h += &other.hopping;
        let mut p = self.pairing.view_mut((0, 0), (m, m));
        p += &other.pairing;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.hopping
            .iter()
            .chain(self.pairing.iter())
            .all(|z| z.norm() == 0.0)
    }

    /// Real drift matrix on `(p1, q1, ...)` generated by this Hamiltonian.
    pub fn drift(&self) -> DMatrix<f64> {
        let n = self.n_modes();
        let mut a = DMatrix::zeros(2 * n, 2 * n);
        for j in 0..n {
            for k in 0..n {
                let m = self.hopping[(j, k)];
                let nn = self.pairing[(j, k)];
                // dp_j/dt and dq_j/dt contributions from (p_k, q_k)
                a[(2 * j, 2 * k)] += m.im + nn.im;
                a[(2 * j, 2 * k + 1)] += m.re - nn.re;
                a[(2 * j + 1, 2 * k)] += -m.re - nn.re;
                a[(2 * j + 1, 2 * k + 1)] += m.im - nn.im;
            }
        }
        a
    }

    /// Symmetric `H_q` with `H = X^T H_q X / 4` and `drift = W H_q`.
    pub fn quadrature_form(&self) -> DMatrix<f64> {
        let w = symplectic_form(self.n_modes().max(1))
            .expect("positive mode count")
            .into_matrix();
        -(w * self.drift())
    }

    /// Nonzero couplings between distinct modes, `j < k`.
    pub fn coupling_graph(&self) -> Vec<(usize, usize, CouplingKind)> {
        let n = self.n_modes();
        let mut edges = Vec::new();
        for j in 0..n {
            for k in (j + 1)..n {
                if self.hopping[(j, k)].norm() > 0.0 {
                    edges.push((j, k, CouplingKind::BeamSplitter));
                }
                if self.pairing[(j, k)].norm() > 0.0 {
                    edges.push((j, k, CouplingKind::TwoModeSqueezing));
                }
            }
        }
        edges
    }
}

fn idx(carrier: Carrier, sideband: Sideband) -> usize {
    ModeLabel::new(carrier, sideband).index()
}

/// Nonlinear coupling among the six sideband modes around the mean fields.
///
/// Writing `g` for `chi / tau`, the Hamiltonian is
///
/// ```text
/// -i g [ conj(a0) (a1u a2l + a1l a2u)
///      + a1 (a0u^dag a2u + a0l^dag a2l)
///      + a2 (a0u^dag a1u + a0l^dag a1l) - h.c. ]
/// ```
///
/// so signal and idler sidebands are paired by the pump and each pump
/// sideband exchanges excitations with the same-side sideband of the other
/// downconverted beam.
pub fn sideband_hamiltonian(params: &OpoParams, means: &MeanFields) -> QuadraticHamiltonian {
    use Carrier::*;
    use Sideband::*;
    let g = params.coupling;
    let i = Complex64::i();
    let mut h = QuadraticHamiltonian::zeros(SIDEBAND_MODES);

    // -i g conj(a0) a1u a2l - h.c.  ->  +i g a0 a1u^dag a2l^dag + h.c.
    let squeeze = i * g * means.pump;
    if squeeze.norm() > 0.0 {
        h.add_pairing(idx(Signal, Upper), idx(Idler, Lower), squeeze);
        h.add_pairing(idx(Signal, Lower), idx(Idler, Upper), squeeze);
    }
    for (partner, amp) in [(Idler, means.signal), (Signal, means.idler)] {
        let hop = -i * g * amp;
        if hop.norm() > 0.0 {
            for sb in [Upper, Lower] {
                h.add_hopping(idx(Pump, sb), idx(partner, sb), hop);
            }
        }
    }
    h
}

/// Sideband-phonon scattering. Phonon mode `j` of `params.phonons` occupies
/// mode index `6 + j`.
///
/// ```text
/// -g_j [ a_n (a_nl^dag d_j^dag + a_nu^dag d_j) + h.c. ]
/// ```
///
/// The lower sideband pairs with phonon creation, the upper one exchanges
/// with phonon annihilation.
pub fn phonon_hamiltonian(params: &OpoParams, means: &MeanFields) -> QuadraticHamiltonian {
    let mut h = QuadraticHamiltonian::zeros(SIDEBAND_MODES + params.phonons.len());
    for (j, ph) in params.phonons.iter().enumerate() {
        let d = SIDEBAND_MODES + j;
        let c = -ph.coupling * means.get(ph.carrier);
        if c.norm() == 0.0 {
            continue;
        }
        h.add_pairing(idx(ph.carrier, Sideband::Lower), d, c);
        h.add_hopping(idx(ph.carrier, Sideband::Upper), d, c);
    }
    h
}
