use std::fmt;

use super::modes::ModeLabel;
use crate::error::{invalid, Result};

/// Split of `n_modes` modes into two nonempty complementary sides.
///
/// The canonical representative puts mode 0 in `side_a`, so every unordered
/// split has exactly one representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    n_modes: usize,
    side_a: Vec<usize>,
    side_b: Vec<usize>,
}

impl Bipartition {
    /// `side` may be either half of the split; it is canonicalized.
    pub fn new(n_modes: usize, side: &[usize]) -> Result<Self> {
        if !(2..=64).contains(&n_modes) {
            return Err(invalid(format!(
                "bipartitions need 2..=64 modes, got {n_modes}"
            )));
        }
        let mut in_side = vec![false; n_modes];
        for &m in side {
            if m >= n_modes {
                return Err(invalid(format!(
                    "mode index {m} out of range for {n_modes} modes"
                )));
            }
            if std::mem::replace(&mut in_side[m], true) {
                return Err(invalid(format!("mode index {m} repeated")));
            }
        }
        if side.is_empty() || side.len() == n_modes {
            return Err(invalid("both sides of a bipartition must be nonempty"));
        }
        if !in_side[0] {
            in_side.iter_mut().for_each(|b| *b = !*b);
        }
        let side_a = (0..n_modes).filter(|&m| in_side[m]).collect();
        let side_b = (0..n_modes).filter(|&m| !in_side[m]).collect();
        Ok(Self {
            n_modes,
            side_a,
            side_b,
        })
    }

    /// From a bit mask of one side (bit `k` set means mode `k`).
    pub fn from_mask(n_modes: usize, mask: u64) -> Result<Self> {
        let side: Vec<usize> = (0..n_modes.min(64))
            .filter(|&k| mask >> k & 1 == 1)
            .collect();
        if n_modes < 64 && mask >> n_modes != 0 {
            return Err(invalid(format!(
                "mask {mask:#b} has bits beyond {n_modes} modes"
            )));
        }
        Self::new(n_modes, &side)
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn side_a(&self) -> &[usize] {
        &self.side_a
    }

    pub fn side_b(&self) -> &[usize] {
        &self.side_b
    }

    /// Bit mask of `side_a`.
    pub fn mask(&self) -> u64 {
        self.side_a.iter().fold(0, |acc, &m| acc | 1 << m)
    }

    pub fn contains(&self, side_a_mode: usize) -> bool {
        self.side_a.binary_search(&side_a_mode).is_ok()
    }

    /// The side used for display: the smaller one, or `side_a` on a tie.
    pub fn display_side(&self) -> &[usize] {
        if self.side_b.len() < self.side_a.len() {
            &self.side_b
        } else {
            &self.side_a
        }
    }

    /// Six-mode label such as `1u+2u`, built from [`Self::display_side`].
    pub fn label(&self) -> String {
        self.display_side()
            .iter()
            .map(|&m| match ModeLabel::from_index(m) {
                Some(label) if self.n_modes == 6 => label.to_string(),
                _ => m.to_string(),
            })
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Inverse of [`Self::label`] for six-mode bipartitions.
    pub fn parse_label(label: &str) -> Result<Self> {
        let modes = label
            .split('+')
            .map(|s| s.trim().parse::<ModeLabel>().map(ModeLabel::index))
            .collect::<Result<Vec<_>>>()?;
        Self::new(6, &modes)
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}
