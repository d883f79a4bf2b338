use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error};

/// Optical carrier of a sideband: the pump and the two downconverted beams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Carrier {
    Pump = 0,
    Signal = 1,
    Idler = 2,
}

impl Carrier {
    pub const ALL: [Carrier; 3] = [Carrier::Pump, Carrier::Signal, Carrier::Idler];

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sideband {
    /// `omega_n - Omega`
    Lower,
    /// `omega_n + Omega`
    Upper,
}

impl Sideband {
    /// +1 for the upper sideband, -1 for the lower one.
    pub fn sign(self) -> f64 {
        match self {
            Sideband::Lower => -1.0,
            Sideband::Upper => 1.0,
        }
    }

    pub fn flipped(self) -> Sideband {
        match self {
            Sideband::Lower => Sideband::Upper,
            Sideband::Upper => Sideband::Lower,
        }
    }
}

/// One of the six sideband modes.
///
/// Canonical order is `0l, 0u, 1l, 1u, 2l, 2u`; a mode's position in that
/// order is its index into the quadrature vector `(p0, q0, p1, q1, ...)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeLabel {
    pub carrier: Carrier,
    pub sideband: Sideband,
}

pub const SIDEBAND_MODES: usize = 6;

impl ModeLabel {
    pub const fn new(carrier: Carrier, sideband: Sideband) -> Self {
        Self { carrier, sideband }
    }

    pub fn all() -> [ModeLabel; SIDEBAND_MODES] {
        let mut out = [ModeLabel::new(Carrier::Pump, Sideband::Lower); SIDEBAND_MODES];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = ModeLabel::from_index(k).expect("index below six");
        }
        out
    }

    pub fn index(self) -> usize {
        2 * self.carrier.index()
            + match self.sideband {
                Sideband::Lower => 0,
                Sideband::Upper => 1,
            }
    }

    pub fn from_index(index: usize) -> Option<Self> {
        let carrier = *Carrier::ALL.get(index / 2)?;
        let sideband = if index.is_multiple_of(2) {
            Sideband::Lower
        } else {
            Sideband::Upper
        };
        Some(Self { carrier, sideband })
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sideband {
            Sideband::Lower => 'l',
            Sideband::Upper => 'u',
        };
        write!(f, "{}{}", self.carrier.index(), s)
    }
}

impl FromStr for ModeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        let (Some(c), Some(sb), None) = (chars.next(), chars.next(), chars.next()) else {
            return Err(invalid(format!("bad mode label '{s}'")));
        };
        let carrier = match c {
            '0' => Carrier::Pump,
            '1' => Carrier::Signal,
            '2' => Carrier::Idler,
            _ => return Err(invalid(format!("bad carrier in mode label '{s}'"))),
        };
        let sideband = match sb {
            'l' => Sideband::Lower,
            'u' => Sideband::Upper,
            _ => return Err(invalid(format!("bad sideband in mode label '{s}'"))),
        };
        Ok(Self { carrier, sideband })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let names: Vec<String> = ModeLabel::all().iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["0l", "0u", "1l", "1u", "2l", "2u"]);
        for (k, m) in ModeLabel::all().iter().enumerate() {
            assert_eq!(m.index(), k);
            assert_eq!(m.to_string().parse::<ModeLabel>().unwrap(), *m);
        }
        assert!(ModeLabel::from_index(6).is_none());
    }

    #[test]
    fn rejects_bad_labels() {
        for bad in ["", "3u", "1x", "1uu", "u1"] {
            assert!(bad.parse::<ModeLabel>().is_err(), "{bad}");
        }
    }
}
