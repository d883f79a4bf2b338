//! Run configuration read from a TOML file.
//!
//! ```toml
//! [physics]
//! transmittance = [0.30, 0.04, 0.04]
//! finesse = [15.0, 125.0, 125.0]     # or spurious_loss = [...]
//! threshold_power = 0.060            # W; or coupling = ... (s^-1)
//!
//! [phonons]
//! enabled = true
//! coupling = 4.0
//!
//! [detection]
//! enabled = false
//!
//! [sweep]
//! sigma = [0.2, 0.5, 0.9]
//! range = { start = 1.005, stop = 1.75, points = 40 }
//! output = "sweep.csv"
//! plots = true
//! ```
//!
//! Every key is optional; omitted physics keys take the experimental
//! defaults. Unknown keys are rejected.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sideband_core::analysis::default_sigma_grid;
use sideband_core::opo::{
    default_phonons, thermal_occupation, OpoParams, DEFAULT_ANALYSIS_FREQUENCY,
    DEFAULT_CRYSTAL_TEMPERATURE, DEFAULT_DETECTION_EFFICIENCY, DEFAULT_FINESSE,
    DEFAULT_FREE_SPECTRAL_RANGE, DEFAULT_PHONON_COUPLING, DEFAULT_PHONON_DAMPING,
    DEFAULT_PUMP_WAVELENGTH, DEFAULT_THRESHOLD_POWER, DEFAULT_TRANSMITTANCE,
};

use crate::error::CliError;

pub const DEFAULT_OUTPUT: &str = "sweep.csv";

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub physics: PhysicsSection,
    #[serde(default)]
    pub phonons: PhononSection,
    #[serde(default)]
    pub detection: DetectionSection,
    #[serde(default)]
    pub sweep: SweepSection,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicsSection {
    /// `chi / tau` in s^-1. Conflicts with `threshold_power`.
    pub coupling: Option<f64>,
    /// Resonant threshold power in W, used to derive `coupling`.
    pub threshold_power: Option<f64>,
    pub pump_wavelength: Option<f64>,
    pub transmittance: Option<[f64; 3]>,
    /// Conflicts with `spurious_loss`.
    pub finesse: Option<[f64; 3]>,
    pub spurious_loss: Option<[f64; 3]>,
    pub free_spectral_range: Option<f64>,
    pub analysis_frequency: Option<f64>,
    pub detuning: Option<[f64; 3]>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhononSection {
    pub enabled: Option<bool>,
    pub coupling: Option<f64>,
    pub damping: Option<f64>,
    /// Crystal temperature in K, used for the bath occupation.
    pub temperature: Option<f64>,
    /// Phonon frequency in Hz for the occupation; defaults to the analysis frequency.
    pub frequency: Option<f64>,
    /// Bath occupation; overrides `temperature` and `frequency`.
    pub occupation: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectionSection {
    pub enabled: Option<bool>,
    pub efficiency: Option<[f64; 3]>,
    pub phase: Option<[f64; 3]>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub sigma: Option<Vec<f64>>,
    pub range: Option<SigmaRange>,
    pub output: Option<PathBuf>,
    pub plots: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaRange {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl SigmaRange {
    pub fn values(&self) -> Vec<f64> {
        match self.points {
            0 => Vec::new(),
            1 => vec![self.start],
            n => {
                let step = (self.stop - self.start) / (n - 1) as f64;
                (0..n)
                    .map(|k| {
                        if k == n - 1 {
                            self.stop
                        } else {
                            self.start + step * k as f64
                        }
                    })
                    .collect()
            }
        }
    }
}

/// Fully resolved run settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Model parameters; `phonons` is populated even when disabled.
    pub params: OpoParams,
    /// Sorted ascending, no duplicates.
    pub sigma_grid: Vec<f64>,
    pub output_path: PathBuf,
    pub emit_plots: bool,
    pub include_phonons: bool,
    pub include_detection: bool,
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn positive(key: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(config_err(format!("{key} = {x} must be positive")))
    }
}

fn nonnegative(key: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() && x >= 0.0 {
        Ok(x)
    } else {
        Err(config_err(format!("{key} = {x} must be nonnegative")))
    }
}

fn in_unit(key: &str, values: [f64; 3]) -> Result<[f64; 3], CliError> {
    for (k, x) in values.iter().enumerate() {
        if !(0.0..=1.0).contains(x) {
            return Err(config_err(format!("{key}[{k}] = {x} is outside [0, 1]")));
        }
    }
    Ok(values)
}

fn finite(key: &str, values: [f64; 3]) -> Result<[f64; 3], CliError> {
    for (k, x) in values.iter().enumerate() {
        if !x.is_finite() {
            return Err(config_err(format!("{key}[{k}] = {x} is not finite")));
        }
    }
    Ok(values)
}

impl RunConfig {
    pub fn from_file_contents(text: &str) -> Result<Self, CliError> {
        let file: ConfigFile =
            toml::from_str(text).map_err(|e| config_err(toml_message(text, &e)))?;
        Self::resolve(&file)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_file_contents(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn resolve(file: &ConfigFile) -> Result<Self, CliError> {
        let ph = &file.physics;
        let mut params = OpoParams::default();

        params.transmittance = in_unit(
            "physics.transmittance",
            ph.transmittance.unwrap_or(DEFAULT_TRANSMITTANCE),
        )?;
        params.spurious_loss = match (ph.finesse, ph.spurious_loss) {
            (Some(_), Some(_)) => {
                return Err(config_err(
                    "physics.finesse and physics.spurious_loss are mutually exclusive",
                ))
            }
            (_, Some(loss)) => {
                for (k, x) in loss.iter().enumerate() {
                    nonnegative(&format!("physics.spurious_loss[{k}]"), *x)?;
                }
                loss
            }
            (finesse, None) => {
                let finesse = finesse.unwrap_or(DEFAULT_FINESSE);
                let mut loss = [0.0; 3];
                for k in 0..3 {
                    let f = positive(&format!("physics.finesse[{k}]"), finesse[k])?;
                    loss[k] = 2.0 * PI / f - params.transmittance[k];
                    if loss[k] < -1e-12 {
                        return Err(config_err(format!(
                            "physics.finesse[{k}] = {f} is above the transmittance limit {}",
                            2.0 * PI / params.transmittance[k]
                        )));
                    }
                    loss[k] = loss[k].max(0.0);
                }
                loss
            }
        };
        params.free_spectral_range = positive(
            "physics.free_spectral_range",
            ph.free_spectral_range
                .unwrap_or(DEFAULT_FREE_SPECTRAL_RANGE),
        )?;
        params.analysis_frequency = nonnegative(
            "physics.analysis_frequency",
            ph.analysis_frequency.unwrap_or(DEFAULT_ANALYSIS_FREQUENCY),
        )?;
        params.detuning = finite("physics.detuning", ph.detuning.unwrap_or([0.0; 3]))?;
        params.coupling = match (ph.coupling, ph.threshold_power) {
            (Some(_), Some(_)) => {
                return Err(config_err(
                    "physics.coupling and physics.threshold_power are mutually exclusive",
                ))
            }
            (Some(g), None) => nonnegative("physics.coupling", g)?,
            (None, power) => {
                let power = positive(
                    "physics.threshold_power",
                    power.unwrap_or(DEFAULT_THRESHOLD_POWER),
                )?;
                let wavelength = positive(
                    "physics.pump_wavelength",
                    ph.pump_wavelength.unwrap_or(DEFAULT_PUMP_WAVELENGTH),
                )?;
                params.coupling_for_threshold(power, wavelength)
            }
        };
        if ph.coupling.is_some() && ph.pump_wavelength.is_some() {
            return Err(config_err(
                "physics.pump_wavelength is only used with physics.threshold_power",
            ));
        }

        let pn = &file.phonons;
        let enabled = pn.enabled.unwrap_or(true);
        let coupling = nonnegative(
            "phonons.coupling",
            pn.coupling.unwrap_or(DEFAULT_PHONON_COUPLING),
        )?;
        let damping = positive(
            "phonons.damping",
            pn.damping.unwrap_or(DEFAULT_PHONON_DAMPING),
        )?;
        let occupation = match pn.occupation {
            Some(n) => {
                if pn.temperature.is_some() || pn.frequency.is_some() {
                    return Err(config_err(
                        "phonons.occupation excludes phonons.temperature and phonons.frequency",
                    ));
                }
                nonnegative("phonons.occupation", n)?
            }
            None => {
                let t = nonnegative(
                    "phonons.temperature",
                    pn.temperature.unwrap_or(DEFAULT_CRYSTAL_TEMPERATURE),
                )?;
                let f = pn.frequency.unwrap_or(params.analysis_frequency);
                if pn.frequency.is_none() && !enabled && f == 0.0 {
                    // disabled phonons at zero analysis frequency: nothing to derive
                    0.0
                } else {
                    thermal_occupation(positive("phonons.frequency", f)?, t)
                }
            }
        };
        params.phonons = default_phonons(coupling, damping, occupation);

        let det = &file.detection;
        params.detection_efficiency = in_unit(
            "detection.efficiency",
            det.efficiency.unwrap_or(DEFAULT_DETECTION_EFFICIENCY),
        )?;
        params.detection_phase = finite("detection.phase", det.phase.unwrap_or([0.0; 3]))?;

        let sw = &file.sweep;
        let mut grid = Vec::new();
        if let Some(list) = &sw.sigma {
            grid.extend_from_slice(list);
        }
        if let Some(range) = &sw.range {
            if range.points == 0 {
                return Err(config_err("sweep.range.points must be at least 1"));
            }
            if !(range.start.is_finite() && range.stop.is_finite() && range.start <= range.stop) {
                return Err(config_err(format!(
                    "sweep.range needs finite start <= stop, got {} .. {}",
                    range.start, range.stop
                )));
            }
            grid.extend(range.values());
        }
        if sw.sigma.is_none() && sw.range.is_none() {
            grid = default_sigma_grid();
        }
        if grid.is_empty() {
            return Err(config_err("sweep.sigma grid is empty"));
        }
        for x in &grid {
            nonnegative("sweep.sigma", *x)?;
        }
        grid.sort_by(f64::total_cmp);
        grid.dedup();

        let config = RunConfig {
            params: params.with_sigma(grid[0]),
            sigma_grid: grid,
            output_path: sw
                .output
                .clone()
                .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT)),
            emit_plots: sw.plots.unwrap_or(false),
            include_phonons: enabled,
            include_detection: det.enabled.unwrap_or(false),
        };
        for &sigma in &config.sigma_grid {
            config
                .model_params(sigma)
                .validate()
                .map_err(|e| config_err(e.to_string()))?;
        }
        Ok(config)
    }

    /// Parameters handed to the model at one grid point.
    pub fn model_params(&self, sigma: f64) -> OpoParams {
        let p = self.params.with_sigma(sigma);
        if self.include_phonons {
            p
        } else {
            p.without_phonons()
        }
    }

    /// Explicit form of this configuration: every derived quantity is
    /// written out, so parsing the result gives back the same `RunConfig`.
    pub fn to_file(&self) -> ConfigFile {
        let p = &self.params;
        let phonon = p.phonons.first();
        ConfigFile {
            physics: PhysicsSection {
                coupling: Some(p.coupling),
                transmittance: Some(p.transmittance),
                spurious_loss: Some(p.spurious_loss),
                free_spectral_range: Some(p.free_spectral_range),
                analysis_frequency: Some(p.analysis_frequency),
                detuning: Some(p.detuning),
                ..PhysicsSection::default()
            },
            phonons: PhononSection {
                enabled: Some(self.include_phonons),
                coupling: phonon.map(|m| m.coupling),
                damping: phonon.map(|m| m.damping),
                occupation: phonon.map(|m| m.occupation),
                ..PhononSection::default()
            },
            detection: DetectionSection {
                enabled: Some(self.include_detection),
                efficiency: Some(p.detection_efficiency),
                phase: Some(p.detection_phase),
            },
            sweep: SweepSection {
                sigma: Some(self.sigma_grid.clone()),
                range: None,
                output: Some(self.output_path.clone()),
                plots: Some(self.emit_plots),
            },
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&self.to_file()).expect("config sections serialize")
    }
}

/// Parse error with its line number.
fn toml_message(text: &str, err: &toml::de::Error) -> String {
    let msg = err.message().trim_end().to_string();
    match err.span() {
        Some(span) => {
            let line = text[..span.start.min(text.len())].matches('\n').count() + 1;
            format!("line {line}: {msg}")
        }
        None => msg,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<RunConfig, CliError> {
        RunConfig::from_file_contents(text)
    }

    #[test]
    fn empty_file_gives_experimental_defaults() {
        let c = parse("").unwrap();
        let p = &c.params;
        assert_eq!(p.detection_efficiency, [0.65, 0.87, 0.87]);
        assert_eq!(p.analysis_frequency, 21e6);
        assert_eq!(p.transmittance[0], 0.30);
        let defaults = OpoParams::default();
        assert!((p.coupling - defaults.coupling).abs() < 1e-9 * defaults.coupling);
        assert_eq!(c.sigma_grid, default_sigma_grid());
        assert!(c.include_phonons);
        assert!(!c.include_detection);
        assert!(!c.emit_plots);

        let with_section = parse("[physics]\n").unwrap();
        assert_eq!(with_section, c);
    }

    #[test]
    fn empty_grid_is_rejected() {
        let err = parse("[sweep]\nsigma = []\n").unwrap_err();
        assert!(
            matches!(err, CliError::Config(ref m) if m.contains("empty")),
            "{err}"
        );
    }

    #[test]
    fn out_of_range_efficiency_names_the_key() {
        let err = parse("[detection]\nefficiency = [1.3, 0.87, 0.87]\n").unwrap_err();
        assert!(err.to_string().contains("detection.efficiency[0]"), "{err}");
        let err = parse("[phonons]\ndamping = -1.0\n").unwrap_err();
        assert!(err.to_string().contains("phonons.damping"), "{err}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(parse("[physics]\nfinese = [1.0, 2.0, 3.0]\n").is_err());
        assert!(parse("[plotting]\n").is_err());
        assert!(
            parse("[sweep]\nrange = { start = 1.0, stop = 2.0, points = 3, step = 1 }\n").is_err()
        );
    }

    #[test]
    fn syntax_errors_carry_a_line_number() {
        let err = parse("[physics]\n\ncoupling = = 3\n").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn conflicting_keys_are_rejected() {
        assert!(parse("[physics]\ncoupling = 1e4\nthreshold_power = 0.05\n").is_err());
        assert!(parse(
            "[physics]\nfinesse = [15.0, 125.0, 125.0]\nspurious_loss = [0.1, 0.01, 0.01]\n"
        )
        .is_err());
        assert!(parse("[phonons]\noccupation = 3.0\ntemperature = 10.0\n").is_err());
    }

    #[test]
    fn grid_merges_list_and_range() {
        let c =
            parse("[sweep]\nsigma = [1.5, 0.5]\nrange = { start = 1.0, stop = 2.0, points = 3 }\n")
                .unwrap();
        assert_eq!(c.sigma_grid, vec![0.5, 1.0, 1.5, 2.0]);
    }

    #[test]
    fn vacuum_configuration_is_allowed() {
        let c = parse("[physics]\ncoupling = 0.0\n[sweep]\nsigma = [0.0]\n").unwrap();
        assert_eq!(c.params.coupling, 0.0);
        assert!(parse("[physics]\ncoupling = 0.0\n[sweep]\nsigma = [0.5]\n").is_err());
    }

    #[test]
    fn serialization_round_trips() {
        let text = "[physics]\ndetuning = [0.1, -0.2, 0.3]\n[phonons]\nenabled = false\ntemperature = 4.0\n\
                    [detection]\nenabled = true\nphase = [0.3, 0.0, 1.0]\n[sweep]\nsigma = [0.7, 1.3]\nplots = true\n";
        let c = parse(text).unwrap();
        let again = parse(&c.to_toml()).unwrap();
        assert_eq!(again, c);
    }
}
