use super::field::Macrospin;
use super::params::StressState;
use crate::error::{invalid, Result};

/// Relative energy spread treated as a tie.
const TIE_TOLERANCE: f64 = 1e-12;

/// Brute-force in-plane ground state. Scans the in-plane angle on a grid of
/// `grid_step` degrees and returns `theta` of the lowest energy. Equal
/// minima resolve toward the larger `theta`.
pub fn energy_minimize(system: &Macrospin, stress: &StressState, grid_step: f64) -> Result<f64> {
    if !(grid_step > 0.0 && grid_step <= 0.1) {
        return Err(invalid("grid_step", "must lie in (0, 0.1] degrees"));
    }
    let n = (360.0 / grid_step).ceil() as usize;
    let step = 360.0 / n as f64;
    let tol = TIE_TOLERANCE * system.energy_scale();

    let mut best_e = f64::INFINITY;
    let mut best_theta = 0.0;
    for k in 0..n {
        let phi = k as f64 * step;
        let theta = (system.reference_deg - phi).rem_euclid(360.0);
        let e = system.in_plane_energy(phi.to_radians(), stress);
        if e < best_e - tol || ((e - best_e).abs() <= tol && theta > best_theta) {
            best_e = best_e.min(e);
            best_theta = theta;
        }
    }
    Ok(best_theta)
}
