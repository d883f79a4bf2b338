//! Classical steady state of the three intracavity carriers.
//!
//! With amplitude decay rates `k0` (pump) and `k` (signal, idler), detunings
//! `d0`, `d` in half-linewidth units, nonlinear rate `g` and pump drive `e`,
//! the steady state solves
//!
//! ```text
//! 0 = -k0 (1 + i d0) a0 - g a1 a2 + e
//! 0 = -k  (1 + i d ) a1 + g a0 conj(a2)
//! 0 = -k  (1 + i d ) a2 + g a0 conj(a1)
//! ```
//!
//! The drive is normalized to the resonant threshold `e_th = k0 k / g`, so
//! `sigma = (e / e_th)^2`. Above threshold `|a1| = |a2|` and `|a0|` clamps
//! at `(k / g) sqrt(1 + d^2)`; the intensity `n = |a1|^2` then follows from
//!
//! ```text
//! sigma = (1 - d0 d + g n / c)^2 + (d0 + d)^2,    c = k0 k / g.
//! ```
//!
//! The signal-idler phase difference is free; it is fixed here by giving
//! both beams the same phase.

use num_complex::Complex64;

use super::params::OpoParams;
use crate::error::{Error, Result};
use crate::gaussian::Carrier;

/// Intracavity amplitudes, `|a|^2` in photons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanFields {
    pub pump: Complex64,
    pub signal: Complex64,
    pub idler: Complex64,
}

impl MeanFields {
    pub const ZERO: MeanFields = MeanFields {
        pump: Complex64::new(0.0, 0.0),
        signal: Complex64::new(0.0, 0.0),
        idler: Complex64::new(0.0, 0.0),
    };

    pub fn get(&self, carrier: Carrier) -> Complex64 {
        match carrier {
            Carrier::Pump => self.pump,
            Carrier::Signal => self.signal,
            Carrier::Idler => self.idler,
        }
    }

    pub fn is_oscillating(&self) -> bool {
        self.signal.norm_sqr() > 0.0
    }

    /// Residuals of the three steady-state equations for a pump drive `e`.
    pub fn residuals(&self, params: &OpoParams, drive: f64) -> [Complex64; 3] {
        let [d0, d, _] = params.effective_detunings();
        let k0 = params.amplitude_decay(Carrier::Pump);
        let k = params.amplitude_decay(Carrier::Signal);
        let g = params.coupling;
        let i = Complex64::i();
        [
            -k0 * (1.0 + i * d0) * self.pump - g * self.signal * self.idler + drive,
            -k * (1.0 + i * d) * self.signal + g * self.pump * self.idler.conj(),
            -k * (1.0 + i * d) * self.idler + g * self.pump * self.signal.conj(),
        ]
    }
}

/// Real pump drive amplitude `sqrt(sigma) * k0 k / g`, in s^-1 photons^(1/2).
pub fn pump_drive(params: &OpoParams) -> f64 {
    if params.coupling == 0.0 {
        return 0.0;
    }
    let c = params.amplitude_decay(Carrier::Pump) * params.amplitude_decay(Carrier::Signal)
        / params.coupling;
    params.sigma.sqrt() * c
}

pub fn mean_fields(params: &OpoParams) -> Result<MeanFields> {
    params.validate()?;
    if params.sigma == 0.0 {
        return Ok(MeanFields::ZERO);
    }
    let [d0, d, _] = params.effective_detunings();
    let k0 = params.amplitude_decay(Carrier::Pump);
    let k = params.amplitude_decay(Carrier::Signal);
    let g = params.coupling;
    let c = k0 * k / g;
    let i = Complex64::i();
    let drive = pump_drive(params);

    // above-threshold branch, larger root
    let detuned_excess = params.sigma - (d0 + d) * (d0 + d);
    let gain = if detuned_excess > 0.0 {
        detuned_excess.sqrt() - (1.0 - d0 * d)
    } else {
        -1.0
    };

    let fields = if gain > 0.0 {
        let n = c * gain / g;
        // e = e^{i psi} [c (1 + i d0)(1 + i d) + g n], with e real
        let bracket = c * (1.0 + i * d0) * (1.0 + i * d) + g * n;
        let psi = -bracket.arg();
        let amp = Complex64::from_polar(n.sqrt(), 0.5 * psi);
        MeanFields {
            pump: (k / g) * (1.0 + i * d) * Complex64::from_polar(1.0, psi),
            signal: amp,
            idler: amp,
        }
    } else {
        MeanFields {
            pump: drive / (k0 * (1.0 + i * d0)),
            ..MeanFields::ZERO
        }
    };

    let ok = [fields.pump, fields.signal, fields.idler]
        .iter()
        .all(|z| z.re.is_finite() && z.im.is_finite());
    if !ok {
        return Err(Error::Convergence(format!(
            "non-finite mean field at sigma = {}",
            params.sigma
        )));
    }
    Ok(fields)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn zero_pump_gives_zero_fields() {
        let m = mean_fields(&OpoParams::default().with_sigma(0.0)).unwrap();
        assert_eq!(m, MeanFields::ZERO);
    }

    #[test]
    fn below_threshold_pump_only() {
        let p = OpoParams::default().with_sigma(0.5);
        let m = mean_fields(&p).unwrap();
        assert!(!m.is_oscillating());
        let k0 = p.amplitude_decay(Carrier::Pump);
        assert_relative_eq!(m.pump.re, pump_drive(&p) / k0, max_relative = 1e-14);
        assert_eq!(m.pump.im, 0.0);
    }

    #[test]
    fn threshold_is_continuous() {
        let p = OpoParams::default();
        let at = mean_fields(&p.with_sigma(1.0)).unwrap();
        assert_eq!(at.signal.norm(), 0.0);
        let below = mean_fields(&p.with_sigma(1.0 - 1e-10)).unwrap();
        let above = mean_fields(&p.with_sigma(1.0 + 1e-10)).unwrap();
        assert_relative_eq!(below.pump.norm(), above.pump.norm(), max_relative = 1e-9);
        assert_relative_eq!(at.pump.norm(), above.pump.norm(), max_relative = 1e-9);
        // |a1|^2 = c (sqrt(sigma) - 1) / g grows from zero
        assert!(above.signal.norm_sqr() < 1e-9 * below.pump.norm_sqr());
    }

    #[test]
    fn pump_clamps_above_threshold() {
        let p = OpoParams::default();
        let k = p.amplitude_decay(Carrier::Signal);
        for sigma in [1.2, 1.5, 1.75] {
            let m = mean_fields(&p.with_sigma(sigma)).unwrap();
            assert_relative_eq!(m.pump.norm(), k / p.coupling, max_relative = 1e-12);
            assert_eq!(m.signal, m.idler);
            let res = m.residuals(&p.with_sigma(sigma), pump_drive(&p.with_sigma(sigma)));
            let scale = k * m.signal.norm();
            for r in res {
                assert!(r.norm() < 1e-10 * scale, "{r}");
            }
        }
    }

    #[test]
    fn detuned_fields_satisfy_steady_state() {
        let mut p = OpoParams::default().with_sigma(2.5);
        p.detuning = [0.3, -0.2, 0.4];
        let m = mean_fields(&p).unwrap();
        assert!(m.is_oscillating());
        let k = p.amplitude_decay(Carrier::Signal);
        for r in m.residuals(&p, pump_drive(&p)) {
            assert!(r.norm() < 1e-10 * k * m.pump.norm(), "{r}");
        }

        // below the detuned threshold (1 + d0^2)(1 + d^2) no oscillation
        p.sigma = 1.05;
        let m = mean_fields(&p).unwrap();
        assert!(!m.is_oscillating());
        for r in m.residuals(&p, pump_drive(&p)) {
            assert!(r.norm() < 1e-10 * k * m.pump.norm());
        }
    }
}
