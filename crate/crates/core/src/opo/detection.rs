use super::langevin::output_covariance;
use super::params::OpoParams;
use crate::error::{invalid, Result};
use crate::gaussian::{
    attenuation_channel, phase_rotation_symplectic, CovarianceMatrix, ModeLabel, SIDEBAND_MODES,
};

/// Detection chain on the six output sidebands: a pure-loss channel with the
/// carrier's efficiency on each sideband, then the demodulation phase, which
/// rotates the upper sideband by `+phi` and the lower one by `-phi`.
pub fn apply_detection(v: &CovarianceMatrix, params: &OpoParams) -> Result<CovarianceMatrix> {
    if v.n_modes() != SIDEBAND_MODES {
        return Err(invalid(format!(
            "detection expects six sidebands, got {} modes",
            v.n_modes()
        )));
    }
    let mut out = v.clone();
    for label in ModeLabel::all() {
        let k = label.carrier.index();
        out = attenuation_channel(&out, label.index(), params.detection_efficiency[k], 0.0)?;
        let phi = params.detection_phase[k];
        if phi != 0.0 {
            let rot = phase_rotation_symplectic(
                SIDEBAND_MODES,
                label.sideband.sign() * phi,
                label.index(),
            )?;
            out = out.transformed(&rot)?;
        }
    }
    Ok(out)
}

/// Output covariance, optionally passed through the detection chain.
pub fn measured_covariance(params: &OpoParams, detection: bool) -> Result<CovarianceMatrix> {
    let v = output_covariance(params)?;
    if detection {
        apply_detection(&v, params)
    } else {
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{marginal, symplectic_eigenvalues};

    #[test]
    fn perfect_detection_is_identity() {
        let mut p = OpoParams::default().with_sigma(1.3);
        p.detection_efficiency = [1.0; 3];
        let v = output_covariance(&p).unwrap();
        let d = apply_detection(&v, &p).unwrap();
        assert!(d.max_abs_diff(&v) < 1e-12);
    }

    #[test]
    fn phase_rotation_is_local() {
        let mut p = OpoParams::default().with_sigma(1.3);
        p.detection_efficiency = [1.0; 3];
        let v = output_covariance(&p).unwrap();
        p.detection_phase = [0.3, -1.1, 2.0];
        let d = apply_detection(&v, &p).unwrap();
        for m in 0..6 {
            let before = symplectic_eigenvalues(&marginal(&v, &[m]).unwrap()).unwrap()[0];
            let after = symplectic_eigenvalues(&marginal(&d, &[m]).unwrap()).unwrap()[0];
            assert!((before - after).abs() < 1e-10 * before);
        }
    }

    #[test]
    fn wrong_mode_count_rejected() {
        let v = CovarianceMatrix::vacuum(2).unwrap();
        assert!(apply_detection(&v, &OpoParams::default()).is_err());
    }
}
