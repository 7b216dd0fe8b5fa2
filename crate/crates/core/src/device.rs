//! Constructors mapping physical component descriptions onto cascade
//! stages, plus loads that draw power without touching the signal path.

use serde::{Deserialize, Serialize};

use crate::cascade::StageSpec;
use crate::error::{Error, Result};
use crate::units::db_to_linear;

/// A power draw that sits off the signal path (oscillators, displays, ...).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonPathLoad {
    name: String,
    power_w: f64,
}

impl NonPathLoad {
    pub fn new(name: impl Into<String>, power_w: f64) -> Result<Self> {
        if !(power_w >= 0.0) || !power_w.is_finite() {
            return Err(Error::InvalidInput(format!(
                "non-path load power must be >= 0 W, got {power_w}"
            )));
        }
        Ok(Self {
            name: name.into(),
            power_w,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn power_w(&self) -> f64 {
        self.power_w
    }
}

/// Low-noise amplifier description.
///
/// `gain` and `noise_factor` are linear ratios; the figure of merit ties
/// them to the DC draw in 1/mW, higher meaning a more frugal part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LnaSpec {
    pub gain: f64,
    pub noise_factor: f64,
    pub figure_of_merit_per_mw: f64,
}

impl LnaSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.gain > 1.0) || !self.gain.is_finite() {
            return Err(Error::InvalidInput(format!(
                "LNA gain must be > 1, got {}",
                self.gain
            )));
        }
        if !(self.noise_factor > 1.0) || !self.noise_factor.is_finite() {
            return Err(Error::Domain(format!(
                "LNA noise factor must be > 1, got {}",
                self.noise_factor
            )));
        }
        if !(self.figure_of_merit_per_mw > 0.0) {
            return Err(Error::Domain(format!(
                "LNA figure of merit must be > 0, got {}",
                self.figure_of_merit_per_mw
            )));
        }
        Ok(())
    }
}

/// Passive attenuator stage from its insertion loss:
/// `G = 10^(-L/10)`, `W = F = 1/G`.
pub fn passive_stage(name: impl Into<String>, insertion_loss_db: f64) -> Result<StageSpec> {
    let name = name.into();
    if !(insertion_loss_db >= 0.0) || !insertion_loss_db.is_finite() {
        return Err(Error::InvalidInput(format!(
            "insertion loss must be >= 0 dB, got {insertion_loss_db}"
        )));
    }
    StageSpec::passive(name, db_to_linear(-insertion_loss_db))
}

/// Power amplifier stage. The amplifier draws `P_out / efficiency` to
/// deliver `P_out`, so its waste factor is `1/efficiency`. PA noise is
/// negligible at transmit drive levels; the noise factor defaults to 1.
pub fn pa_stage(name: impl Into<String>, efficiency: f64, gain: f64) -> Result<StageSpec> {
    pa_stage_with_noise(name, efficiency, gain, 1.0)
}

/// [`pa_stage`] with an explicit noise factor for configurations that
/// model transmit-side noise.
pub fn pa_stage_with_noise(
    name: impl Into<String>,
    efficiency: f64,
    gain: f64,
    noise_factor: f64,
) -> Result<StageSpec> {
    if !(efficiency > 0.0 && efficiency <= 1.0) {
        return Err(Error::InvalidInput(format!(
            "PA efficiency must be in (0, 1], got {efficiency}"
        )));
    }
    StageSpec::new(name, gain, 1.0 / efficiency, noise_factor)
}

/// Antenna radiation efficiency as a dissipative passive stage. Directive
/// gain belongs to the link budget, not the cascade.
pub fn antenna_stage(name: impl Into<String>, efficiency: f64) -> Result<StageSpec> {
    if !(efficiency > 0.0 && efficiency <= 1.0) {
        return Err(Error::InvalidInput(format!(
            "antenna efficiency must be in (0, 1], got {efficiency}"
        )));
    }
    StageSpec::passive(name, efficiency)
}

/// DC draw implied by an LNA's figure of merit:
/// `P_dc = G / (FoM * (F - 1))`, returned in watts (the FoM is per mW).
pub fn lna_dc_power(lna: &LnaSpec) -> Result<f64> {
    lna.validate()?;
    Ok(lna.gain / (lna.figure_of_merit_per_mw * (lna.noise_factor - 1.0)) * 1e-3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cascade::CascadeSpec;

    #[test]
    fn passive_identity() {
        let s = passive_stage("wire", 0.0).unwrap();
        assert_eq!(s.gain(), 1.0);
        assert_eq!(s.waste_factor(), 1.0);
        assert_eq!(s.noise_factor(), 1.0);
    }

    #[test]
    fn passive_3db() {
        let s = passive_stage("pad", 3.0).unwrap();
        assert!((s.gain() - 0.5011872336272722).abs() < 1e-12);
        assert!((s.waste_factor() - 1.9952623149688795).abs() < 1e-12);
        assert!((s.noise_factor() - s.waste_factor()).abs() < 1e-15);
    }

    #[test]
    fn passive_10db_phase_shifter() {
        let s = passive_stage("phase shifter", 10.0).unwrap();
        assert!((s.gain() - 0.1).abs() < 1e-15);
        assert!((s.waste_factor() - 10.0).abs() < 1e-12);
        assert!((s.noise_factor() - 10.0).abs() < 1e-12);
    }

    #[test]
    fn passive_negative_loss_rejected() {
        assert!(passive_stage("bad", -1.0).is_err());
    }

    #[test]
    fn pa_waste_from_efficiency() {
        assert!((pa_stage("pa", 0.28, 10.0).unwrap().waste_factor() - 3.5714285714285716).abs() < 1e-12);
        assert!((pa_stage("pa", 0.208, 10.0).unwrap().waste_factor() - 4.807692307692308).abs() < 1e-12);
        assert_eq!(pa_stage("pa", 1.0, 10.0).unwrap().waste_factor(), 1.0);
        assert!(pa_stage("pa", 0.0, 10.0).is_err());
        assert!(pa_stage("pa", 1.2, 10.0).is_err());
    }

    #[test]
    fn antenna_efficiency_stage() {
        let s = antenna_stage("antenna", 0.6).unwrap();
        assert_eq!(s.gain(), 0.6);
        assert!((s.waste_factor() - 1.6666666666666667).abs() < 1e-12);

        assert_eq!(antenna_stage("antenna", 1.0).unwrap().waste_factor(), 1.0);
        assert_eq!(antenna_stage("antenna", 0.5).unwrap().waste_factor(), 2.0);
        assert!(antenna_stage("antenna", 0.0).is_err());
    }

    #[test]
    fn lna_dc_power_from_fom() {
        // 20 dB gain, F = 2, 24.83/mW: 100/24.83 mW = 4.027 mW.
        let lna = LnaSpec {
            gain: 100.0,
            noise_factor: 2.0,
            figure_of_merit_per_mw: 24.83,
        };
        let p = lna_dc_power(&lna).unwrap();
        assert!((p - 100.0 / 24.83 * 1e-3).abs() < 1e-15);
        assert!((p - 4.027e-3).abs() < 1e-6);

        let frugal = LnaSpec {
            figure_of_merit_per_mw: 8.33,
            ..lna
        };
        assert!((lna_dc_power(&frugal).unwrap() - 12.005e-3).abs() < 1e-6);

        let ideal = LnaSpec {
            figure_of_merit_per_mw: f64::INFINITY,
            ..lna
        };
        assert_eq!(lna_dc_power(&ideal).unwrap(), 0.0);
    }

    #[test]
    fn lna_noise_factor_at_or_below_one_is_domain_error() {
        let lna = LnaSpec {
            gain: 100.0,
            noise_factor: 1.0,
            figure_of_merit_per_mw: 24.83,
        };
        assert!(matches!(lna_dc_power(&lna), Err(Error::Domain(_))));
    }

    #[test]
    fn passive_losses_compose() {
        // passive(a) then passive(b) behaves like passive(a + b).
        let split = CascadeSpec::new(vec![
            passive_stage("a", 3.0).unwrap(),
            passive_stage("b", 7.0).unwrap(),
        ])
        .unwrap();
        let joined = passive_stage("ab", 10.0).unwrap();
        assert!((split.total_gain() - joined.gain()).abs() <= 1e-12 * joined.gain());
        assert!(
            (split.waste_factor() - joined.waste_factor()).abs()
                <= 1e-12 * joined.waste_factor()
        );
        assert!(
            (split.noise_factor() - joined.noise_factor()).abs()
                <= 1e-12 * joined.noise_factor()
        );
    }
}
