//! Physical model of the oscillator: parameters, classical mean fields,
//! linearized sideband and phonon couplings, and the output sideband state.

mod detection;
mod hamiltonian;
mod langevin;
mod mean_field;
mod params;

pub use detection::{apply_detection, measured_covariance};
pub use hamiltonian::{
    phonon_hamiltonian, sideband_hamiltonian, CouplingKind, QuadraticHamiltonian,
};
pub use langevin::{
    build_langevin, output_covariance, ChannelKind, InputChannel, LangevinSystem, NEUTRAL_TOL,
};
pub use mean_field::{mean_fields, pump_drive, MeanFields};
pub use params::*;
