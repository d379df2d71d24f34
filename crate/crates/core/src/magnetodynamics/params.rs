use std::f64::consts::PI;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Vacuum permeability, T·m/A.
pub const MU0: f64 = 4.0e-7 * PI;
/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Free-electron gyromagnetic ratio, rad/(s·T). `MU0 * GAMMA_ELECTRON` is
/// the familiar 2.21e5 m/(A·s).
pub const GAMMA_ELECTRON: f64 = 1.760_859_63e11;
/// Default material stress limit, Pa.
pub const DEFAULT_STRESS_LIMIT: f64 = 200.0e6;

/// Free-layer material and geometry. Axes are full lengths of the ellipse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MagnetParams {
    /// A/m
    pub saturation_magnetization: f64,
    /// m
    pub major_axis: f64,
    /// m
    pub minor_axis: f64,
    /// m
    pub thickness: f64,
    /// Saturation magnetostriction, dimensionless.
    pub magnetostriction: f64,
    pub damping: f64,
    /// rad/(s·T)
    pub gyromagnetic_ratio: f64,
}

impl MagnetParams {
    /// Terfenol-D elliptical free layer, 80 x 60 x 15 nm.
    pub fn terfenol_d() -> Self {
        Self {
            saturation_magnetization: 8.0e5,
            major_axis: 80.0e-9,
            minor_axis: 60.0e-9,
            thickness: 15.0e-9,
            magnetostriction: 900.0e-6,
            damping: 0.1,
            gyromagnetic_ratio: GAMMA_ELECTRON,
        }
    }

    /// Volume of the elliptic cylinder, m^3.
    pub fn volume(&self) -> f64 {
        PI / 4.0 * self.major_axis * self.minor_axis * self.thickness
    }

    /// Area of the elliptical face, m^2.
    pub fn area(&self) -> f64 {
        PI / 4.0 * self.major_axis * self.minor_axis
    }

    /// Gyromagnetic ratio in field units, m/(A·s).
    pub fn gamma_field(&self) -> f64 {
        MU0 * self.gyromagnetic_ratio
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.saturation_magnetization > 0.0) {
            return Err(invalid("saturation_magnetization", "must be > 0"));
        }
        if !(self.thickness > 0.0 && self.minor_axis > 0.0 && self.major_axis > 0.0) {
            return Err(Error::InvalidGeometry(format!(
                "dimensions must be positive, got {:e} x {:e} x {:e} m",
                self.major_axis, self.minor_axis, self.thickness
            )));
        }
        if !(self.major_axis > self.minor_axis) {
            return Err(Error::InvalidGeometry(
                "major axis must exceed minor axis".into(),
            ));
        }
        if !(self.damping > 0.0 && self.damping < 1.0) {
            return Err(invalid("damping", "must lie in (0, 1)"));
        }
        if !(self.gyromagnetic_ratio > 0.0) {
            return Err(invalid("gyromagnetic_ratio", "must be > 0"));
        }
        if !self.magnetostriction.is_finite() {
            return Err(invalid("magnetostriction", "must be finite"));
        }
        Ok(())
    }
}

impl Default for MagnetParams {
    fn default() -> Self {
        Self::terfenol_d()
    }
}

/// Uniaxial stresses along the free-layer axes. Positive is compressive.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct StressState {
    /// Pa, along the major (x) axis
    pub sigma_major: f64,
    /// Pa, along the minor (y) axis
    pub sigma_minor: f64,
}

impl StressState {
    pub fn new(sigma_major: f64, sigma_minor: f64) -> Self {
        Self {
            sigma_major,
            sigma_minor,
        }
    }

    pub fn validate(&self, limit: f64) -> Result<()> {
        for sigma in [self.sigma_major, self.sigma_minor] {
            if !sigma.is_finite() || sigma.abs() > limit {
                return Err(Error::StressOutOfRange {
                    stress: sigma,
                    limit,
                });
            }
        }
        Ok(())
    }
}

/// Integration and stopping controls for [`relax`](super::relax).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimOptions {
    /// K
    pub temperature: f64,
    /// s
    pub dt: f64,
    /// s
    pub max_time: f64,
    /// rad/s, threshold on |dm/dt|
    pub convergence_tol: f64,
    /// Linear rise time of the applied stress, s. Zero applies it as a step.
    pub stress_ramp: f64,
    pub rng_seed: u64,
    pub record_trajectory: bool,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self {
            temperature: 0.0,
            dt: 1.0e-12,
            max_time: 200.0e-9,
            convergence_tol: 1.0e3,
            stress_ramp: 1.0e-9,
            rng_seed: 0,
            record_trajectory: false,
        }
    }
}

impl SimOptions {
    pub fn at_temperature(mut self, temperature: f64) -> Self {
        self.temperature = temperature;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.temperature >= 0.0) || !self.temperature.is_finite() {
            return Err(invalid("temperature", "must be >= 0 K"));
        }
        if !(self.dt > 0.0 && self.dt <= 10.0e-12) {
            return Err(invalid("dt", "must lie in (0, 10 ps]"));
        }
        if !(self.max_time >= 100.0 * self.dt) {
            return Err(invalid("max_time", "must be at least 100 time steps"));
        }
        if !(self.stress_ramp >= 0.0 && self.stress_ramp < self.max_time) {
            return Err(invalid("stress_ramp", "must lie in [0, max_time)"));
        }
        if !(self.convergence_tol > 0.0) {
            return Err(invalid("convergence_tol", "must be > 0"));
        }
        Ok(())
    }
}

/// In-plane angle (degrees, counter-clockwise from the free-layer major
/// axis) of a vector.
pub(crate) fn in_plane_angle(m: &Vector3<f64>) -> f64 {
    m.y.atan2(m.x).to_degrees()
}

/// Unit magnetization of the free layer plus its angle to the fixed layer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MagState {
    pub m: Vector3<f64>,
    /// Degrees in [0, 360): angle from the free-layer magnetization to the
    /// fixed-layer magnetization, measured in the film plane and growing
    /// with clockwise rotation of `m`.
    pub theta: f64,
}

impl MagState {
    /// Normalizes `m` and derives `theta` against a fixed-layer magnetization
    /// lying at in-plane angle `reference_deg`.
    pub fn new(m: Vector3<f64>, reference_deg: f64) -> Result<Self> {
        let norm = m.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(invalid(
                "m",
                "magnetization must be a finite non-zero vector",
            ));
        }
        let m = m / norm;
        Ok(Self {
            m,
            theta: theta_of(&m, reference_deg),
        })
    }

    /// In-plane state at angle `theta` (degrees) to the fixed layer.
    pub fn in_plane(theta: f64, reference_deg: f64) -> Self {
        let phi = (reference_deg - theta).to_radians();
        let m = Vector3::new(phi.cos(), phi.sin(), 0.0);
        Self {
            m,
            theta: theta_of(&m, reference_deg),
        }
    }
}

pub(crate) fn theta_of(m: &Vector3<f64>, reference_deg: f64) -> f64 {
    (reference_deg - in_plane_angle(m)).rem_euclid(360.0)
}
