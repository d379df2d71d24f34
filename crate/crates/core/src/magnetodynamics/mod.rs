//! Macrospin dynamics of the magnetostrictive free layer.
//!
//! Frame: x along the ellipse major axis, y along the minor axis, z normal
//! to the film. In-plane angles are counter-clockwise from +x; `theta` is the
//! angle between free- and fixed-layer magnetizations and grows with
//! clockwise rotation.

mod demag;
mod field;
mod integrate;
mod oracle;
mod params;

pub use demag::{demag_factors, ellipsoid_demag_factors, elliptic_cylinder_demag, DemagFactors};
pub use field::{thermal_field_sample, thermal_sigma, Macrospin};
pub use integrate::{
    llg_rhs, llg_step, relax, relax_with_rng, trajectory_rng, Chirality, SteadyStateResult,
    TrajectorySample, CHIRALITY_THRESHOLD_DEG, QUIET_STEPS,
};
pub use oracle::energy_minimize;
pub use params::{
    MagState, MagnetParams, SimOptions, StressState, BOLTZMANN, DEFAULT_STRESS_LIMIT,
    GAMMA_ELECTRON, MU0,
};
