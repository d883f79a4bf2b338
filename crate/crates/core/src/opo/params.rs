use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::gaussian::Carrier;

pub const HBAR: f64 = 1.054_571_817e-34; // J s
pub const BOLTZMANN: f64 = 1.380_649e-23; // J / K
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0; // m / s

pub const DEFAULT_TRANSMITTANCE: [f64; 3] = [0.30, 0.04, 0.04];
pub const DEFAULT_FINESSE: [f64; 3] = [15.0, 125.0, 125.0];
pub const DEFAULT_FREE_SPECTRAL_RANGE: f64 = 4.3e9; // Hz
pub const DEFAULT_ANALYSIS_FREQUENCY: f64 = 21e6; // Hz
pub const DEFAULT_DETECTION_EFFICIENCY: [f64; 3] = [0.65, 0.87, 0.87];
pub const DEFAULT_THRESHOLD_POWER: f64 = 0.060; // W
pub const DEFAULT_PUMP_WAVELENGTH: f64 = 532e-9; // m
pub const DEFAULT_CRYSTAL_TEMPERATURE: f64 = 260.0; // K

/// Phonon coupling per unit of mean-field amplitude (s^-1).
pub const DEFAULT_PHONON_COUPLING: f64 = 4.0;
/// Energy damping rate of each effective phonon mode (s^-1).
pub const DEFAULT_PHONON_DAMPING: f64 = 1.0e8;

/// One crystal phonon mode coupled to the sidebands of a single carrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhononMode {
    pub carrier: Carrier,
    /// `g`, in s^-1 per unit of intracavity field amplitude.
    pub coupling: f64,
    /// Energy damping rate into the thermal bath, s^-1.
    pub damping: f64,
    /// Mean thermal occupation of the bath.
    pub occupation: f64,
}

/// Physical constants of the oscillator, its crystal and its detection.
///
/// Rates are in s^-1, frequencies in Hz, detunings in units of the
/// carrier's cavity half-linewidth.
#[derive(Debug, Clone, PartialEq)]
pub struct OpoParams {
    /// Effective nonlinear rate `chi / tau`.
    pub coupling: f64,
    /// Coupling-mirror transmittance per carrier (pump, signal, idler).
    pub transmittance: [f64; 3],
    /// Round-trip intracavity loss per carrier, not coupled to detection.
    pub spurious_loss: [f64; 3],
    pub free_spectral_range: f64,
    pub analysis_frequency: f64,
    /// Pump power over the resonant oscillation threshold.
    pub sigma: f64,
    pub detuning: [f64; 3],
    pub phonons: Vec<PhononMode>,
    pub detection_efficiency: [f64; 3],
    /// Demodulation phase per carrier, radians.
    pub detection_phase: [f64; 3],
}

impl Default for OpoParams {
    fn default() -> Self {
        let spurious_loss = default_spurious_loss();
        let mut params = Self {
            coupling: 0.0,
            transmittance: DEFAULT_TRANSMITTANCE,
            spurious_loss,
            free_spectral_range: DEFAULT_FREE_SPECTRAL_RANGE,
            analysis_frequency: DEFAULT_ANALYSIS_FREQUENCY,
            sigma: 1.5,
            detuning: [0.0; 3],
            phonons: Vec::new(),
            detection_efficiency: DEFAULT_DETECTION_EFFICIENCY,
            detection_phase: [0.0; 3],
        };
        params.coupling =
            params.coupling_for_threshold(DEFAULT_THRESHOLD_POWER, DEFAULT_PUMP_WAVELENGTH);
        let occupation =
            thermal_occupation(DEFAULT_ANALYSIS_FREQUENCY, DEFAULT_CRYSTAL_TEMPERATURE);
        params.phonons =
            default_phonons(DEFAULT_PHONON_COUPLING, DEFAULT_PHONON_DAMPING, occupation);
        params
    }
}

/// Residual loss that brings `2 pi / (T + L)` to the default finesse.
pub fn default_spurious_loss() -> [f64; 3] {
    let mut out = [0.0; 3];
    for k in 0..3 {
        out[k] = 2.0 * PI / DEFAULT_FINESSE[k] - DEFAULT_TRANSMITTANCE[k];
    }
    out
}

/// One phonon mode per carrier, all sharing the same constants.
pub fn default_phonons(coupling: f64, damping: f64, occupation: f64) -> Vec<PhononMode> {
    Carrier::ALL
        .iter()
        .map(|&carrier| PhononMode {
            carrier,
            coupling,
            damping,
            occupation,
        })
        .collect()
}

/// Bose-Einstein occupation of a mode at `frequency` (Hz) and `temperature` (K).
pub fn thermal_occupation(frequency: f64, temperature: f64) -> f64 {
    if temperature <= 0.0 {
        return 0.0;
    }
    let x = HBAR * 2.0 * PI * frequency / (BOLTZMANN * temperature);
    1.0 / x.exp_m1()
}

impl OpoParams {
    /// The vacuum-in, vacuum-out configuration: no nonlinearity, no pump.
    pub fn vacuum() -> Self {
        Self {
            coupling: 0.0,
            sigma: 0.0,
            phonons: Vec::new(),
            ..Self::default()
        }
    }

    pub fn with_sigma(&self, sigma: f64) -> Self {
        Self {
            sigma,
            ..self.clone()
        }
    }

    pub fn without_phonons(&self) -> Self {
        Self {
            phonons: Vec::new(),
            ..self.clone()
        }
    }

    /// No spurious cavity loss and no phonons.
    pub fn lossless(&self) -> Self {
        Self {
            spurious_loss: [0.0; 3],
            phonons: Vec::new(),
            ..self.clone()
        }
    }

    /// Total energy decay rate of a carrier's cavity mode.
    pub fn decay_rate(&self, carrier: Carrier) -> f64 {
        let k = carrier.index();
        (self.transmittance[k] + self.spurious_loss[k]) * self.free_spectral_range
    }

    /// Energy decay rate through the coupling mirror.
    pub fn mirror_rate(&self, carrier: Carrier) -> f64 {
        self.transmittance[carrier.index()] * self.free_spectral_range
    }

    pub fn spurious_rate(&self, carrier: Carrier) -> f64 {
        self.spurious_loss[carrier.index()] * self.free_spectral_range
    }

    /// Field amplitude decay rate, half the energy decay rate.
    pub fn amplitude_decay(&self, carrier: Carrier) -> f64 {
        0.5 * self.decay_rate(carrier)
    }

    pub fn finesse(&self, carrier: Carrier) -> f64 {
        let k = carrier.index();
        2.0 * PI / (self.transmittance[k] + self.spurious_loss[k])
    }

    /// Analysis frequency in rad/s.
    pub fn analysis_angular(&self) -> f64 {
        2.0 * PI * self.analysis_frequency
    }

    /// Signal and idler oscillate at frequencies that equalize their
    /// detunings, so both see the mean of the two cavity detunings.
    pub fn effective_detunings(&self) -> [f64; 3] {
        let avg = 0.5 * (self.detuning[1] + self.detuning[2]);
        [self.detuning[0], avg, avg]
    }

    /// `chi / tau` that puts the resonant threshold at `power` (W) for a pump
    /// of vacuum wavelength `wavelength` (m).
    pub fn coupling_for_threshold(&self, power: f64, wavelength: f64) -> f64 {
        let photon_energy = HBAR * 2.0 * PI * SPEED_OF_LIGHT / wavelength;
        let drive = (self.mirror_rate(Carrier::Pump) * power / photon_energy).sqrt();
        self.amplitude_decay(Carrier::Pump) * self.amplitude_decay(Carrier::Signal) / drive
    }

    pub fn validate(&self) -> Result<()> {
        let finite_nonneg = |name: &str, x: f64| -> Result<()> {
            if x.is_finite() && x >= 0.0 {
                Ok(())
            } else {
                Err(invalid(format!(
                    "{name} = {x} must be finite and nonnegative"
                )))
            }
        };
        let unit = |name: &str, x: f64| -> Result<()> {
            if (0.0..=1.0).contains(&x) {
                Ok(())
            } else {
                Err(invalid(format!("{name} = {x} outside [0, 1]")))
            }
        };
        finite_nonneg("coupling", self.coupling)?;
        finite_nonneg("sigma", self.sigma)?;
        finite_nonneg("analysis_frequency", self.analysis_frequency)?;
        if !(self.free_spectral_range.is_finite() && self.free_spectral_range > 0.0) {
            return Err(invalid(format!(
                "free_spectral_range = {} must be positive",
                self.free_spectral_range
            )));
        }
        for k in 0..3 {
            unit(&format!("transmittance[{k}]"), self.transmittance[k])?;
            finite_nonneg(&format!("spurious_loss[{k}]"), self.spurious_loss[k])?;
            if self.transmittance[k] + self.spurious_loss[k] <= 0.0 {
                return Err(invalid(format!("carrier {k} has no cavity loss at all")));
            }
            unit(
                &format!("detection_efficiency[{k}]"),
                self.detection_efficiency[k],
            )?;
            if !self.detuning[k].is_finite() {
                return Err(invalid(format!(
                    "detuning[{k}] = {} is not finite",
                    self.detuning[k]
                )));
            }
            if !self.detection_phase[k].is_finite() {
                return Err(invalid(format!("detection_phase[{k}] is not finite")));
            }
        }
        let (ks, ki) = (
            self.decay_rate(Carrier::Signal),
            self.decay_rate(Carrier::Idler),
        );
        if (ks - ki).abs() > 1e-12 * ks.max(ki) {
            return Err(invalid(
                "signal and idler must share the same cavity decay rate",
            ));
        }
        if self.coupling == 0.0 && self.sigma > 0.0 {
            return Err(invalid("sigma > 0 requires a positive coupling"));
        }
        for (j, ph) in self.phonons.iter().enumerate() {
            finite_nonneg(&format!("phonons[{j}].coupling"), ph.coupling)?;
            finite_nonneg(&format!("phonons[{j}].occupation"), ph.occupation)?;
            if !(ph.damping.is_finite() && ph.damping > 0.0) {
                return Err(invalid(format!(
                    "phonons[{j}].damping = {} must be positive",
                    ph.damping
                )));
            }
        }
        Ok(())
    }
}
