//! The skewed four-terminal s-MTJ.
//!
//! Electrode pair 2 (`V2`) stresses the free-layer major axis, pair 3 (`V3`)
//! the minor axis, and terminal 1 reads the junction at a small bias `V1`.

mod config;
mod table;
mod transfer;
mod valley;

use nalgebra::Vector3;
use rand::Rng;

pub use config::{DeviceConfig, JunctionParams, PiezoConfig};
pub use table::{
    anchored_grid, build_resistance_table, uniform_grid, ResistanceTable, TableRow, ENCODING_RANGE,
    MAX_GRID_STEP,
};
pub use transfer::{
    linspace, transfer_curve, TransferCurve, TransferSample, DEFAULT_REPEATS, MIN_POINTS,
};
pub use valley::{
    calibrate_offset, characterize_valley, find_valley_center, CalibrationPoint, DeviceCalibration,
    ValleyShape, DEFAULT_CALIBRATION_LEVELS, FLOOR_OFFSETS,
};

use crate::error::{Error, Result};
use crate::magnetodynamics::{
    energy_minimize, relax_with_rng, trajectory_rng, Macrospin, MagState, SimOptions,
    SteadyStateResult, StressState,
};

/// Default read bias, V.
pub const DEFAULT_V1: f64 = 10e-3;

/// A validated device with its free-layer model prepared.
#[derive(Debug, Clone, PartialEq)]
pub struct Device {
    config: DeviceConfig,
    system: Macrospin,
}

impl Device {
    pub fn new(config: DeviceConfig) -> Result<Self> {
        config.validate()?;
        let reference = config.reference_deg();
        let (s, c) = reference.to_radians().sin_cos();
        let dipole = -config.dipole_field * Vector3::new(c, s, 0.0);
        let system = Macrospin::new(config.magnet, dipole, reference)?;
        Ok(Self { config, system })
    }

    pub fn standard() -> Self {
        Self::new(DeviceConfig::default()).expect("default device is valid")
    }

    pub fn config(&self) -> &DeviceConfig {
        &self.config
    }

    pub fn macrospin(&self) -> &Macrospin {
        &self.system
    }

    /// Unstrained start: along the free-layer major axis on the obtuse side.
    pub fn initial_state(&self) -> MagState {
        MagState::in_plane(self.config.reference_deg(), self.config.reference_deg())
    }

    pub fn stress(&self, v2: f64, v3: f64) -> Result<StressState> {
        self.config.stress(v2, v3)
    }

    pub fn resistance_from_angle(&self, theta: f64) -> f64 {
        self.config.junction.resistance(theta)
    }

    pub fn steady_state_with_rng<R: Rng + ?Sized>(
        &self,
        v2: f64,
        v3: f64,
        opts: &SimOptions,
        rng: &mut R,
    ) -> Result<SteadyStateResult> {
        let stress = self.stress(v2, v3)?;
        relax_with_rng(&self.system, &self.initial_state(), &stress, opts, rng)
    }

    pub fn steady_state(&self, v2: f64, v3: f64, opts: &SimOptions) -> Result<SteadyStateResult> {
        let mut rng = trajectory_rng(opts.rng_seed, 0);
        self.steady_state_with_rng(v2, v3, opts, &mut rng)
    }

    /// Final angle after relaxing from the unstrained start. A run that
    /// does not settle is an error rather than a silent last sample.
    pub fn steady_angle(&self, v2: f64, v3: f64, opts: &SimOptions) -> Result<f64> {
        let r = self.steady_state(v2, v3, opts)?;
        if !r.converged {
            return Err(Error::NotConverged {
                v2,
                v3,
                max_time: opts.max_time,
            });
        }
        Ok(r.final_state.theta)
    }

    /// In-plane ground state by exhaustive scan.
    pub fn oracle_angle(&self, v2: f64, v3: f64, grid_step: f64) -> Result<f64> {
        let stress = self.stress(v2, v3)?;
        energy_minimize(&self.system, &stress, grid_step)
    }

    /// Static resistance at a drive point, zero temperature.
    pub fn resistance_at(&self, v2: f64, v3: f64) -> Result<f64> {
        let theta = self.steady_angle(v2, v3, &SimOptions::default())?;
        Ok(self.resistance_from_angle(theta))
    }
}
