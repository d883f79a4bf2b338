//! Linearized quantum Langevin system of the open cavity and its
//! input-output solution at the analysis frequency.
//!
//! Each sideband is treated as a mode in a frame rotating at its own optical
//! frequency `omega_n +/- Omega`. In that frame every term of the sideband
//! and phonon Hamiltonians is static, and the cavity resonance of carrier
//! `n` sits at `-/+ Omega` (plus the carrier detuning). The Fourier
//! components of the output fields at exactly the sideband frequencies are
//! then the zero-frequency response of a time-independent linear system:
//!
//! ```text
//! 0 = A x + B x_in,    x_out = sqrt(gamma_mirror) x - x_in(mirror)
//! ```
//!
//! Phonon modes are internal; they enter through their thermal baths and
//! never appear among the outputs.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::hamiltonian::{phonon_hamiltonian, sideband_hamiltonian, QuadraticHamiltonian};
use super::mean_field::{mean_fields, MeanFields};
use super::params::OpoParams;
use crate::error::{Error, Result};
use crate::gaussian::{general_eigenvalues, CovarianceMatrix, ModeLabel, SIDEBAND_MODES};

/// Relative size of an eigenvalue real part still accepted as neutral.
///
/// Above threshold the signal-idler phase difference is undamped, which
/// leaves drift eigenvalues with zero real part. They do not make the
/// response at `Omega > 0` singular, so they are tolerated.
pub const NEUTRAL_TOL: f64 = 1e-9;

/// Smallest accepted ratio of LU pivots before the system counts as singular.
const PIVOT_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    /// Vacuum entering through the coupling mirror.
    Mirror,
    /// Vacuum entering through intracavity loss.
    Spurious,
    /// Thermal bath of a phonon mode.
    PhononBath,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputChannel {
    pub kind: ChannelKind,
    /// Internal mode the channel drives.
    pub mode: usize,
    /// Energy coupling rate, s^-1.
    pub rate: f64,
    /// Quadrature variance of the incoming field, `2 n + 1`.
    pub variance: f64,
}

#[derive(Debug, Clone)]
pub struct LangevinSystem {
    pub means: MeanFields,
    /// Internal modes: the six sidebands followed by the phonon modes.
    pub n_modes: usize,
    /// `2M x 2M` drift on `(p, q)` of every internal mode.
    pub drift: DMatrix<f64>,
    /// `2M x 2K` coupling of the `K` input channels.
    pub input_coupling: DMatrix<f64>,
    pub channels: Vec<InputChannel>,
    /// Mirror channel index for each output sideband, in canonical order.
    pub output_ports: [usize; SIDEBAND_MODES],
}

/// Assembles drift, damping and input channels for the current operating point.
pub fn build_langevin(params: &OpoParams) -> Result<LangevinSystem> {
    let means = mean_fields(params)?;
    let n_modes = SIDEBAND_MODES + params.phonons.len();
    let detuning = params.effective_detunings();
    let omega = params.analysis_angular();

    let mut ham = QuadraticHamiltonian::zeros(n_modes);
    for label in ModeLabel::all() {
        let c = label.carrier;
        let cavity = detuning[c.index()] * params.amplitude_decay(c);
        let free = cavity - label.sideband.sign() * omega;
        ham.add_hopping(label.index(), label.index(), Complex64::from(free));
    }
    ham.embed_add(&sideband_hamiltonian(params, &means))?;
    ham.embed_add(&phonon_hamiltonian(params, &means))?;

    let mut drift = ham.drift();
    let mut damping = vec![0.0; n_modes];
    for label in ModeLabel::all() {
        damping[label.index()] = 0.5 * params.decay_rate(label.carrier);
    }
    for (j, ph) in params.phonons.iter().enumerate() {
        damping[SIDEBAND_MODES + j] = 0.5 * ph.damping;
    }
    for (m, rate) in damping.iter().enumerate() {
        drift[(2 * m, 2 * m)] -= rate;
        drift[(2 * m + 1, 2 * m + 1)] -= rate;
    }

    let mut channels = Vec::with_capacity(2 * SIDEBAND_MODES + params.phonons.len());
    let mut output_ports = [0; SIDEBAND_MODES];
    for label in ModeLabel::all() {
        output_ports[label.index()] = channels.len();
        channels.push(InputChannel {
            kind: ChannelKind::Mirror,
            mode: label.index(),
            rate: params.mirror_rate(label.carrier),
            variance: 1.0,
        });
    }
    for label in ModeLabel::all() {
        channels.push(InputChannel {
            kind: ChannelKind::Spurious,
            mode: label.index(),
            rate: params.spurious_rate(label.carrier),
            variance: 1.0,
        });
    }
    for (j, ph) in params.phonons.iter().enumerate() {
        channels.push(InputChannel {
            kind: ChannelKind::PhononBath,
            mode: SIDEBAND_MODES + j,
            rate: ph.damping,
            variance: 2.0 * ph.occupation + 1.0,
        });
    }

    let mut input_coupling = DMatrix::zeros(2 * n_modes, 2 * channels.len());
    for (c, ch) in channels.iter().enumerate() {
        let amp = ch.rate.sqrt();
        input_coupling[(2 * ch.mode, 2 * c)] = amp;
        input_coupling[(2 * ch.mode + 1, 2 * c + 1)] = amp;
    }

    let system = LangevinSystem {
        means,
        n_modes,
        drift,
        input_coupling,
        channels,
        output_ports,
    };
    system.check_stability()?;
    Ok(system)
}

impl LangevinSystem {
    /// Drift eigenvalue with the largest real part.
    pub fn leading_eigenvalue(&self) -> Result<Complex64> {
        let eig = general_eigenvalues(&self.drift).ok_or_else(|| {
            Error::Convergence("eigenvalue iteration on the drift did not converge".into())
        })?;
        Ok(eig
            .into_iter()
            .max_by(|a, b| a.re.total_cmp(&b.re))
            .unwrap_or_default())
    }

    /// Rejects drifts with a growing mode; neutral modes within
    /// [`NEUTRAL_TOL`] of the drift scale pass.
    pub fn check_stability(&self) -> Result<()> {
        let lead = self.leading_eigenvalue()?;
        if lead.re > NEUTRAL_TOL * self.drift.amax() {
            return Err(Error::UnstableOperatingPoint {
                re: lead.re,
                im: lead.im,
            });
        }
        Ok(())
    }

    /// Input variances, one `2 x 2` block per channel.
    pub fn input_covariance(&self) -> DMatrix<f64> {
        let k = self.channels.len();
        DMatrix::from_fn(2 * k, 2 * k, |i, j| {
            if i == j {
                self.channels[i / 2].variance
            } else {
                0.0
            }
        })
    }

    /// `12 x 2K` real map from input quadratures to output sideband quadratures.
    pub fn transfer_matrix(&self) -> Result<DMatrix<f64>> {
        let lu = self.drift.clone().lu();
        let u = lu.u();
        let pivots = u.diagonal().map(f64::abs);
        let (lo, hi) = (pivots.min(), pivots.max());
        if !(lo > PIVOT_TOL * hi) {
            return Err(Error::ResonanceSingularity(format!(
                "pivot ratio {:.3e}",
                lo / hi
            )));
        }
        let response = lu
            .solve(&self.input_coupling)
            .ok_or_else(|| Error::ResonanceSingularity("drift is not invertible".into()))?;

        let cols = self.input_coupling.ncols();
        let mut t = DMatrix::zeros(2 * SIDEBAND_MODES, cols);
        for k in 0..SIDEBAND_MODES {
            let port = self.output_ports[k];
            let amp = self.channels[port].rate.sqrt();
            for quad in 0..2 {
                let row = 2 * k + quad;
                for c in 0..cols {
                    t[(row, c)] = -amp * response[(row, c)];
                }
                t[(row, 2 * port + quad)] -= 1.0;
            }
        }
        Ok(t)
    }

    pub fn output_covariance(&self) -> Result<CovarianceMatrix> {
        let t = self.transfer_matrix()?;
        CovarianceMatrix::from_rounded(&t * self.input_covariance() * t.transpose())
    }
}

/// Covariance of the six output sidebands leaving the cavity, before detection.
pub fn output_covariance(params: &OpoParams) -> Result<CovarianceMatrix> {
    build_langevin(params)?.output_covariance()
}
