//! Thermal statistics, energy accounting and energy-delay studies.

mod edp;
mod energy;
mod montecarlo;

pub use edp::{
    drive_settle_time, edp_sweep, log_frequencies, ramp_loss_factor, EdpCurve, EdpPoint,
    EDP_HEADER, SETTLE_BAND_DEG,
};
pub use energy::{search_energy, switching_energy, EnergyModel, SearchEnergy};
pub use montecarlo::{monte_carlo_rotation, MonteCarloReport};
