use super::family::{classify, BipartitionFamily};
use crate::error::{invalid, Result};
use crate::gaussian::{
    log_negativity, min_symplectic_eigenvalue, pt_witness, Bipartition, CovarianceMatrix,
    SIDEBAND_MODES,
};

/// Margin below one a witness must clear to count as entangled, so that
/// roundoff on separable states is not flagged.
pub const ENTANGLEMENT_TOL: f64 = 1e-9;

/// Number of bipartitions of the six sidebands, `2^5 - 1`.
pub const BIPARTITION_COUNT: usize = 31;

/// All bipartitions of the six sidebands, ordered by the bit mask of the
/// side holding mode `0l`.
pub fn enumerate_bipartitions() -> Vec<Bipartition> {
    let full = (1u64 << SIDEBAND_MODES) - 1;
    (1..full)
        .step_by(2)
        .map(|mask| Bipartition::from_mask(SIDEBAND_MODES, mask).expect("mask within six modes"))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessEntry {
    pub bipartition: Bipartition,
    pub family: BipartitionFamily,
    /// Smallest symplectic eigenvalue of the partial transpose.
    pub nu_min: f64,
    pub log_neg: f64,
}

impl WitnessEntry {
    pub fn is_entangled(&self) -> bool {
        self.nu_min < 1.0 - ENTANGLEMENT_TOL
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessTable {
    pub sigma: f64,
    /// One entry per bipartition, in [`enumerate_bipartitions`] order.
    pub entries: Vec<WitnessEntry>,
    /// Smallest symplectic eigenvalue of the state itself.
    pub physical_min_nu: f64,
}

impl WitnessTable {
    pub fn get(&self, b: &Bipartition) -> Option<&WitnessEntry> {
        self.entries.iter().find(|e| &e.bipartition == b)
    }

    /// Witness for a bipartition given by label, e.g. `"1u+2u"`.
    pub fn nu(&self, label: &str) -> Result<f64> {
        let b = Bipartition::parse_label(label)?;
        self.get(&b)
            .map(|e| e.nu_min)
            .ok_or_else(|| invalid(format!("bipartition {label} missing from table")))
    }

    pub fn family(&self, family: BipartitionFamily) -> impl Iterator<Item = &WitnessEntry> {
        self.entries.iter().filter(move |e| e.family == family)
    }
}

/// Witness and log negativity for all 31 bipartitions of a six-mode state.
pub fn witness_table(v: &CovarianceMatrix, sigma: f64) -> Result<WitnessTable> {
    if v.n_modes() != SIDEBAND_MODES {
        return Err(invalid(format!(
            "witness table needs six modes, got {}",
            v.n_modes()
        )));
    }
    let entries = enumerate_bipartitions()
        .into_iter()
        .map(|b| {
            let nu_min = pt_witness(v, &b)?;
            Ok(WitnessEntry {
                family: classify(&b),
                log_neg: log_negativity(nu_min)?,
                nu_min,
                bipartition: b,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WitnessTable {
        sigma,
        entries,
        physical_min_nu: min_symplectic_eigenvalue(v)?,
    })
}
