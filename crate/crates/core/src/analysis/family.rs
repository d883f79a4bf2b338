//! Structural grouping of the 31 sideband bipartitions.
//!
//! Only the placement of the four infrared sidebands `1l, 1u, 2l, 2u`
//! matters. Let `I` be the infrared modes on one side of the split:
//!
//! | `I` (either side)              | family         |
//! |--------------------------------|----------------|
//! | `{1u, 2u}` or `{1l, 2l}`       | twin-sideband  |
//! | `{1l, 1u}` or `{2l, 2u}`       | single-beam    |
//! | `{1u, 2l}` or `{1l, 2u}`       | squeezer-split |
//! | one infrared mode alone        | single-mode    |
//! | none, other side `{0l, 0u}`    | pump-split     |
//! | none, other side one pump mode | other          |
//!
//! The pump sidebands may sit on either side in the first four rows, so
//! those families hold 4, 4, 4 and 16 bipartitions.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error};
use crate::gaussian::{Bipartition, Carrier, ModeLabel, Sideband, SIDEBAND_MODES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BipartitionFamily {
    /// Both upper (or both lower) infrared sidebands against the rest.
    TwinSideband,
    /// Both sidebands of one infrared beam against the rest.
    SingleBeam,
    /// The two squeezer pairs `(1u, 2l)` and `(1l, 2u)` on opposite sides.
    SqueezerSplit,
    /// One infrared sideband separated from the other three.
    SingleMode,
    /// Both pump sidebands against all four infrared sidebands.
    PumpSplit,
    Other,
}

impl BipartitionFamily {
    pub const ALL: [BipartitionFamily; 6] = [
        BipartitionFamily::TwinSideband,
        BipartitionFamily::SingleBeam,
        BipartitionFamily::SqueezerSplit,
        BipartitionFamily::SingleMode,
        BipartitionFamily::PumpSplit,
        BipartitionFamily::Other,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BipartitionFamily::TwinSideband => "twin-sideband",
            BipartitionFamily::SingleBeam => "single-beam",
            BipartitionFamily::SqueezerSplit => "squeezer-split",
            BipartitionFamily::SingleMode => "single-mode",
            BipartitionFamily::PumpSplit => "pump-split",
            BipartitionFamily::Other => "other",
        }
    }
}

impl fmt::Display for BipartitionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BipartitionFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| invalid(format!("unknown bipartition family `{s}`")))
    }
}

fn idx(carrier: Carrier, sideband: Sideband) -> usize {
    ModeLabel::new(carrier, sideband).index()
}

/// Structural family of a six-mode bipartition. Bipartitions over any other
/// number of modes are `Other`.
pub fn classify(b: &Bipartition) -> BipartitionFamily {
    use BipartitionFamily::*;
    use Carrier::{Idler, Signal};
    use Sideband::{Lower, Upper};

    if b.n_modes() != SIDEBAND_MODES {
        return Other;
    }
    let infrared = [
        idx(Signal, Lower),
        idx(Signal, Upper),
        idx(Idler, Lower),
        idx(Idler, Upper),
    ];
    let on_a: Vec<usize> = infrared
        .iter()
        .copied()
        .filter(|&m| b.contains(m))
        .collect();

    match on_a.len() {
        1 | 3 => SingleMode,
        0 | 4 => {
            // the side without infrared modes holds only pump sidebands
            let pump_side = if on_a.is_empty() {
                b.side_a()
            } else {
                b.side_b()
            };
            if pump_side.len() == 2 {
                PumpSplit
            } else {
                Other
            }
        }
        _ => {
            let pair = |c1, s1, c2, s2| {
                let (x, y) = (idx(c1, s1), idx(c2, s2));
                on_a == [x.min(y), x.max(y)] || !on_a.iter().any(|&m| m == x || m == y)
            };
            if pair(Signal, Upper, Idler, Upper) {
                TwinSideband
            } else if pair(Signal, Lower, Signal, Upper) {
                SingleBeam
            } else {
                SqueezerSplit
            }
        }
    }
}
