//! Gaussian-state linear algebra in shot-noise units.

mod bipartition;
mod channel;
mod covariance;
mod modes;
mod symplectic;

pub use bipartition::Bipartition;
pub use channel::attenuation_channel;
pub(crate) use covariance::general_eigenvalues;
pub use covariance::{
    is_physical, log_negativity, marginal, min_symplectic_eigenvalue, partial_transpose,
    pt_witness, purity, symplectic_eigenvalues, symplectic_form, CovarianceMatrix, SymplecticForm,
    PAIRING_TOL, SYMMETRY_TOL,
};
pub use modes::{Carrier, ModeLabel, Sideband, SIDEBAND_MODES};
pub use symplectic::{
    beam_splitter_symplectic, phase_rotation_symplectic, single_mode_squeeze_symplectic,
    symplectic_defect, two_mode_squeeze_symplectic,
};
