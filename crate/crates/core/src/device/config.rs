use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::magnetodynamics::{MagnetParams, StressState, DEFAULT_STRESS_LIMIT};

/// Piezoelectric film and electrodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PiezoConfig {
    /// Film thickness `a`, m.
    pub thickness: f64,
    /// Electric field needed per unit stress, (V/m)/Pa.
    pub field_per_stress: f64,
    /// F
    pub capacitance: f64,
    /// Electrode edge `L`, m. Metadata only.
    pub electrode_edge: f64,
    /// Electrode separation `d`, m. Metadata only.
    pub electrode_spacing: f64,
    /// |V| above which the film is assumed to break down, V.
    pub breakdown_voltage: f64,
    /// Material stress limit, Pa.
    pub stress_limit: f64,
}

impl Default for PiezoConfig {
    fn default() -> Self {
        Self {
            thickness: 100e-9,
            field_per_stress: 37e3 / 1e6,
            capacitance: 1.5e-15,
            electrode_edge: 100e-9,
            electrode_spacing: 150e-9,
            breakdown_voltage: 1.0,
            stress_limit: DEFAULT_STRESS_LIMIT,
        }
    }
}

impl PiezoConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.thickness > 0.0) {
            return Err(invalid("piezo.thickness", "must be > 0"));
        }
        if !(self.field_per_stress > 0.0) {
            return Err(invalid("piezo.field_per_stress", "must be > 0"));
        }
        if !(self.capacitance > 0.0) {
            return Err(invalid("piezo.capacitance", "must be > 0"));
        }
        let (l, d) = (self.electrode_edge, self.electrode_spacing);
        if !(l > 0.0 && d >= l && d <= 2.0 * l) {
            return Err(invalid(
                "piezo.electrode_spacing",
                format!("need L <= d <= 2L, got L = {l:e}, d = {d:e}"),
            ));
        }
        if !(self.breakdown_voltage > 0.0) {
            return Err(invalid("piezo.breakdown_voltage", "must be > 0"));
        }
        if !(self.stress_limit > 0.0) {
            return Err(invalid("piezo.stress_limit", "must be > 0"));
        }
        Ok(())
    }

    /// Largest |V| that respects both the breakdown and the stress limit.
    pub fn max_voltage(&self) -> f64 {
        let stress_bound = self.stress_limit * self.thickness * self.field_per_stress;
        self.breakdown_voltage.min(stress_bound)
    }

    /// Signed stress from an electrode-pair voltage; positive voltage
    /// compresses.
    pub fn voltage_to_stress(&self, voltage: f64) -> Result<f64> {
        if !voltage.is_finite() || voltage.abs() > self.breakdown_voltage {
            return Err(Error::VoltageOutOfRange {
                voltage,
                limit: self.breakdown_voltage,
            });
        }
        Ok(voltage / self.thickness / self.field_per_stress)
    }
}

/// Tunnel-junction resistances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JunctionParams {
    /// Ohm
    pub r_p: f64,
    /// Ohm
    pub r_ap: f64,
    /// TMR ratio `(R_AP - R_P) / R_P`.
    pub chi: f64,
    /// Ohm um^2, provenance of `r_p`.
    pub resistance_area_product: f64,
}

impl JunctionParams {
    /// From a resistance-area product (Ohm um^2), junction area (m^2) and TMR
    /// ratio.
    pub fn from_ra(resistance_area_product: f64, area: f64, chi: f64) -> Self {
        let r_p = resistance_area_product * 1e-12 / area;
        Self {
            r_p,
            r_ap: r_p * (1.0 + chi),
            chi,
            resistance_area_product,
        }
    }

    /// 10 Ohm um^2 barrier with 100% TMR on the default free layer.
    pub fn thin_barrier() -> Self {
        Self::from_ra(10.0, MagnetParams::terfenol_d().area(), 1.0)
    }

    /// 2 nm barrier, 8000 Ohm um^2, 100% TMR.
    pub fn thick_barrier() -> Self {
        Self::from_ra(8000.0, MagnetParams::terfenol_d().area(), 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_p > 0.0 && self.r_ap > self.r_p) {
            return Err(invalid("junction", "need R_AP > R_P > 0"));
        }
        let chi = (self.r_ap - self.r_p) / self.r_p;
        if !(self.chi > 0.0) || (chi - self.chi).abs() > 1e-12 * self.chi.max(1.0) {
            return Err(invalid(
                "junction.chi",
                format!("must equal (R_AP - R_P)/R_P = {chi}"),
            ));
        }
        Ok(())
    }

    /// Resistance at angle `theta` (degrees) between the two magnetizations.
    pub fn resistance(&self, theta: f64) -> f64 {
        let c = theta.to_radians().cos();
        let frac = (1.0 - c) / (self.chi * (1.0 + c) + 2.0);
        self.r_p + (self.r_ap - self.r_p) * frac
    }
}

impl Default for JunctionParams {
    fn default() -> Self {
        Self::thin_barrier()
    }
}

/// Full skewed four-terminal device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeviceConfig {
    pub magnet: MagnetParams,
    pub junction: JunctionParams,
    pub piezo: PiezoConfig,
    /// Stray field of the fixed layer at the free layer, T. It lies along
    /// the fixed-layer major axis, antiparallel to the fixed-layer
    /// magnetization.
    pub dipole_field: f64,
    /// Angle between the major axes of fixed and free layer, degrees.
    pub skew_angle: f64,
}

impl Default for DeviceConfig {
    fn default() -> Self {
        Self {
            magnet: MagnetParams::terfenol_d(),
            junction: JunctionParams::thin_barrier(),
            piezo: PiezoConfig::default(),
            dipole_field: 7.05e-3,
            skew_angle: 45.0,
        }
    }
}

impl DeviceConfig {
    pub fn validate(&self) -> Result<()> {
        self.magnet.validate()?;
        self.junction.validate()?;
        self.piezo.validate()?;
        if !(self.dipole_field >= 0.0) || !self.dipole_field.is_finite() {
            return Err(invalid("dipole_field", "must be >= 0"));
        }
        if !(self.skew_angle > 0.0 && self.skew_angle < 90.0) {
            return Err(invalid("skew_angle", "must lie in (0, 90) degrees"));
        }
        Ok(())
    }

    /// In-plane direction of the fixed-layer magnetization, degrees from
    /// the free-layer major axis. The obtuse rest configuration puts it at
    /// `180 - skew`.
    pub fn reference_deg(&self) -> f64 {
        180.0 - self.skew_angle
    }

    /// Stress from the two electrode-pair voltages: pair 2 strains the
    /// major axis, pair 3 the minor axis.
    pub fn stress(&self, v2: f64, v3: f64) -> Result<StressState> {
        let s = StressState::new(
            self.piezo.voltage_to_stress(v2)?,
            self.piezo.voltage_to_stress(v3)?,
        );
        s.validate(self.piezo.stress_limit)?;
        Ok(s)
    }

    pub fn switching_energy(&self, voltage: f64) -> f64 {
        self.piezo.capacitance * voltage * voltage
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    #[test]
    fn stress_mapping() {
        let p = PiezoConfig::default();
        assert!((p.voltage_to_stress(3.7e-3).unwrap() - 1e6).abs() < 1e-6);
        assert_eq!(p.voltage_to_stress(0.0).unwrap(), 0.0);
        assert!((p.voltage_to_stress(-7.4e-3).unwrap() + 2e6).abs() < 1e-6);
        assert!(matches!(
            p.voltage_to_stress(1.5),
            Err(Error::VoltageOutOfRange { .. })
        ));
    }

    #[test]
    fn resistance_law() {
        let j = JunctionParams::thin_barrier();
        j.validate().unwrap();
        assert!((j.r_p - 10.0e-12 / (PI * 40e-9 * 30e-9)).abs() < 1e-9);
        assert!((j.resistance(0.0) - j.r_p).abs() < 1e-12 * j.r_p);
        assert!((j.resistance(180.0) - j.r_ap).abs() < 1e-12 * j.r_ap);
        // (1 - cos) / (cos + 3) at 135 degrees
        let c = -(0.5f64.sqrt());
        let expected = j.r_p * (1.0 + (1.0 - c) / (c + 3.0));
        assert!((j.resistance(135.0) - expected).abs() < 1e-9);
        assert!((j.resistance(135.0) - 4627.4).abs() < 0.1);
    }

    #[test]
    fn junction_consistency() {
        let mut j = JunctionParams::thin_barrier();
        j.chi = 0.8;
        assert!(j.validate().is_err());
        let j = JunctionParams::thick_barrier();
        assert!((j.r_p / JunctionParams::thin_barrier().r_p - 800.0).abs() < 1e-9);
    }

    #[test]
    fn device_validation() {
        let mut d = DeviceConfig::default();
        d.validate().unwrap();
        assert_eq!(d.reference_deg(), 135.0);
        d.skew_angle = 90.0;
        assert!(d.validate().is_err());
        let mut d = DeviceConfig::default();
        d.piezo.electrode_spacing = 300e-9;
        assert!(d.validate().is_err());
    }

    #[test]
    fn encoding_range_within_stress_limit() {
        let d = DeviceConfig::default();
        assert!(d.stress(0.7, -0.1).is_ok());
        let mut tight = d;
        tight.piezo.stress_limit = 100e6;
        assert!(matches!(
            tight.stress(0.7, 0.0),
            Err(Error::StressOutOfRange { .. })
        ));
    }
}
