use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::field::{thermal_field_sample, Macrospin};
use super::params::{in_plane_angle, theta_of, MagState, SimOptions, StressState};
use crate::error::{Error, Result};

/// Consecutive quiet steps required before a zero-temperature run counts as
/// settled.
pub const QUIET_STEPS: usize = 100;
/// Net rotation below which a trajectory is left unclassified, degrees.
pub const CHIRALITY_THRESHOLD_DEG: f64 = 5.0;

/// Net rotation sense of a trajectory. Clockwise means `theta` increased.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Clockwise,
    Anticlockwise,
    None,
}

impl Chirality {
    pub fn classify(rotation_deg: f64) -> Self {
        if rotation_deg.abs() < CHIRALITY_THRESHOLD_DEG {
            Chirality::None
        } else if rotation_deg > 0.0 {
            Chirality::Clockwise
        } else {
            Chirality::Anticlockwise
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySample {
    pub time: f64,
    pub m: Vector3<f64>,
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteadyStateResult {
    pub final_state: MagState,
    /// Time at which the sustained quiet window began. Equal to the full run
    /// length when thermal noise is on or the run did not settle.
    pub settle_time: f64,
    pub converged: bool,
    pub trajectory: Option<Vec<TrajectorySample>>,
    pub chirality: Chirality,
    /// Net change of `theta` over the run, unwrapped, degrees.
    pub rotation_deg: f64,
    pub steps: usize,
}

/// Independent, reproducible stream for trajectory `index` of a run seeded
/// with `seed`.
pub fn trajectory_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Landau-Lifshitz right-hand side for a unit vector, 1/s.
pub fn llg_rhs(m: &Vector3<f64>, h: &Vector3<f64>, damping: f64, gamma_field: f64) -> Vector3<f64> {
    let mxh = m.cross(h);
    -gamma_field * (mxh + damping * m.cross(&mxh))
}

fn blowup(time: f64, m: &Vector3<f64>, h: &Vector3<f64>, stress: &StressState) -> Error {
    Error::NumericalBlowup {
        time,
        m: [m.x, m.y, m.z],
        field: [h.x, h.y, h.z],
        sigma_major: stress.sigma_major,
        sigma_minor: stress.sigma_minor,
    }
}

/// Heun step with a thermal field shared by predictor and corrector.
fn heun(
    system: &Macrospin,
    m: &Vector3<f64>,
    stress: &StressState,
    thermal: &Vector3<f64>,
    dt: f64,
    time: f64,
) -> Result<Vector3<f64>> {
    let alpha = system.params.damping;
    let g = system.params.gamma_field();
    let h1 = system.effective_field(m, stress, thermal);
    if !(h1.x.is_finite() && h1.y.is_finite() && h1.z.is_finite()) {
        return Err(blowup(time, m, &h1, stress));
    }
    let k1 = llg_rhs(m, &h1, alpha, g);
    let predicted = m + k1 * dt;
    let h2 = system.effective_field(&predicted, stress, thermal);
    let k2 = llg_rhs(&predicted, &h2, alpha, g);
    let next = m + (k1 + k2) * (0.5 * dt);
    let norm = next.norm();
    if !norm.is_finite() || norm == 0.0 {
        return Err(blowup(time, m, &h2, stress));
    }
    Ok(next / norm)
}

/// One stochastic Heun step of length `opts.dt`.
pub fn llg_step<R: Rng + ?Sized>(
    system: &Macrospin,
    state: &MagState,
    stress: &StressState,
    opts: &SimOptions,
    rng: &mut R,
) -> Result<MagState> {
    let thermal = thermal_field_sample(&system.params, opts, rng);
    let m = heun(system, &state.m, stress, &thermal, opts.dt, 0.0)?;
    Ok(MagState {
        m,
        theta: theta_of(&m, system.reference_deg),
    })
}

/// Integrates to steady state with a stream derived from `opts.rng_seed`.
pub fn relax(
    system: &Macrospin,
    initial: &MagState,
    stress: &StressState,
    opts: &SimOptions,
) -> Result<SteadyStateResult> {
    let mut rng = trajectory_rng(opts.rng_seed, 0);
    relax_with_rng(system, initial, stress, opts, &mut rng)
}

/// Integrates until `|dm/dt|` stays below the tolerance for
/// [`QUIET_STEPS`] steps, or until `max_time`. With thermal noise the full
/// `max_time` is always integrated and the end state is reported as the
/// steady-state sample.
pub fn relax_with_rng<R: Rng + ?Sized>(
    system: &Macrospin,
    initial: &MagState,
    stress: &StressState,
    opts: &SimOptions,
    rng: &mut R,
) -> Result<SteadyStateResult> {
    opts.validate()?;
    let thermal_on = opts.temperature > 0.0;
    let max_steps = (opts.max_time / opts.dt).round() as usize;
    let mut m = initial.m.normalize();
    let mut phi = in_plane_angle(&m);
    let mut unwrapped = 0.0;
    let mut quiet = 0usize;
    let mut quiet_since = 0.0;
    let mut trajectory = opts.record_trajectory.then(|| {
        vec![TrajectorySample {
            time: 0.0,
            m,
            theta: theta_of(&m, system.reference_deg),
        }]
    });

    let mut steps = 0;
    let mut converged = false;
    while steps < max_steps {
        let time = steps as f64 * opts.dt;
        let ramping = time < opts.stress_ramp;
        let applied = if ramping {
            let f = (time + 0.5 * opts.dt) / opts.stress_ramp;
            StressState::new(f * stress.sigma_major, f * stress.sigma_minor)
        } else {
            *stress
        };
        let thermal = thermal_field_sample(&system.params, opts, rng);
        let next = heun(system, &m, &applied, &thermal, opts.dt, time)?;
        steps += 1;
        let now = steps as f64 * opts.dt;

        let next_phi = in_plane_angle(&next);
        let mut d = next_phi - phi;
        if d > 180.0 {
            d -= 360.0;
        } else if d < -180.0 {
            d += 360.0;
        }
        unwrapped += d;
        phi = next_phi;

        let rate = (next - m).norm() / opts.dt;
        m = next;
        if let Some(t) = trajectory.as_mut() {
            t.push(TrajectorySample {
                time: now,
                m,
                theta: theta_of(&m, system.reference_deg),
            });
        }

        if thermal_on {
            continue;
        }
        if !ramping && rate < opts.convergence_tol {
            if quiet == 0 {
                quiet_since = time;
            }
            quiet += 1;
            if quiet >= QUIET_STEPS {
                converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
    }

    let elapsed = steps as f64 * opts.dt;
    let settle_time = if converged { quiet_since } else { elapsed };
    let rotation_deg = -unwrapped;
    Ok(SteadyStateResult {
        final_state: MagState {
            m,
            theta: theta_of(&m, system.reference_deg),
        },
        settle_time,
        converged: converged || thermal_on,
        trajectory,
        chirality: Chirality::classify(rotation_deg),
        rotation_deg,
        steps,
    })
}
