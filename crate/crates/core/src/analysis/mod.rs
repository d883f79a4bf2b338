//! Bipartition enumeration, witness tables and pump-power sweeps over the
//! six output sidebands.

mod family;
mod sweep;
mod table;

pub use family::{classify, BipartitionFamily};
pub use sweep::{default_sigma_grid, evaluate, sweep_sigma, SweepFailure, SweepPoint};
pub use table::{
    enumerate_bipartitions, witness_table, WitnessEntry, WitnessTable, BIPARTITION_COUNT,
    ENTANGLEMENT_TOL,
};
