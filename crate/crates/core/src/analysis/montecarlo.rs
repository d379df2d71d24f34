use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::device::Device;
use crate::error::{invalid, Result};
use crate::magnetodynamics::{trajectory_rng, Chirality, SimOptions};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub v2: f64,
    pub v3: f64,
    pub temperature: f64,
    pub trials: usize,
    pub clockwise: usize,
    pub anticlockwise: usize,
    pub unresolved: usize,
    pub theta_mean: f64,
    pub theta_std: f64,
    pub seed: u64,
}

/// Relaxes `trials` trajectories from the unstrained start under a fixed
/// drive and tallies the rotation sense. Trial `k` uses stream `k` of
/// `seed`, and the reduction runs in trial order, so the report does not
/// depend on the thread count.
pub fn monte_carlo_rotation(
    device: &Device,
    drive: (f64, f64),
    opts: &SimOptions,
    trials: usize,
    seed: u64,
) -> Result<MonteCarloReport> {
    if trials == 0 {
        return Err(invalid("trials", "must be at least 1"));
    }
    opts.validate()?;
    let (v2, v3) = drive;
    let outcomes: Vec<(Chirality, f64)> = (0..trials as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = trajectory_rng(seed, k);
            let r = device.steady_state_with_rng(v2, v3, opts, &mut rng)?;
            Ok((r.chirality, r.final_state.theta))
        })
        .collect::<Result<_>>()?;

    let mut report = MonteCarloReport {
        v2,
        v3,
        temperature: opts.temperature,
        trials,
        clockwise: 0,
        anticlockwise: 0,
        unresolved: 0,
        theta_mean: 0.0,
        theta_std: 0.0,
        seed,
    };
    // Welford
    let mut m2 = 0.0;
    for (k, (c, theta)) in outcomes.into_iter().enumerate() {
        match c {
            Chirality::Clockwise => report.clockwise += 1,
            Chirality::Anticlockwise => report.anticlockwise += 1,
            Chirality::None => report.unresolved += 1,
        }
        let d = theta - report.theta_mean;
        report.theta_mean += d / (k + 1) as f64;
        m2 += d * (theta - report.theta_mean);
    }
    report.theta_std = if trials > 1 {
        (m2 / (trials - 1) as f64).sqrt()
    } else {
        0.0
    };
    Ok(report)
}
