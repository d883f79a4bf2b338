//! Gaussian model of the six sideband modes emitted by a triply resonant
//! optical parametric oscillator, and the partial-transposition witness
//! evaluated over every bipartition of those modes.
//!
//! The crate is split in three layers:
//!
//! - [`gaussian`]: covariance matrices in shot-noise units, symplectic
//!   spectra, partial transposition and the elementary Gaussian channels.
//! - [`opo`]: classical mean fields, the linearized sideband and phonon
//!   couplings, and the input-output solution giving the 12x12 covariance
//!   of the output sidebands at the analysis frequency.
//! - [`analysis`]: bipartition enumeration, witness tables, structural
//!   families and pump-power sweeps.

pub mod analysis;
pub mod error;
pub mod gaussian;
pub mod opo;

pub use error::{Error, Result};
