use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Device;
use crate::error::{invalid, Error, Result};
use crate::export::write_csv;
use crate::magnetodynamics::{trajectory_rng, SimOptions};

/// Stochastic repeats per sample above 0 K.
pub const DEFAULT_REPEATS: usize = 16;
pub const MIN_POINTS: usize = 16;

pub(crate) const SAMPLE_HEADER: [&str; 6] = ["V2", "V3", "theta_deg", "R_ohm", "I1_A", "T_K"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransferSample {
    pub v2: f64,
    /// Mean angle, degrees.
    pub theta: f64,
    /// Mean resistance, Ohm.
    pub r: f64,
    /// Read current `V1 / R`, A.
    pub i1: f64,
    /// Standard deviation over repeats, zero at 0 K.
    pub theta_std: f64,
    pub r_std: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferCurve {
    pub v1: f64,
    pub v3: f64,
    pub temperature: f64,
    pub repeats: usize,
    pub samples: Vec<TransferSample>,
}

impl TransferCurve {
    pub fn resistances(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.r).collect()
    }

    /// Resistance at `v2` by linear interpolation, clamped to the ends.
    pub fn resistance_at(&self, v2: f64) -> f64 {
        let s = &self.samples;
        if v2 <= s[0].v2 {
            return s[0].r;
        }
        let last = s.len() - 1;
        if v2 >= s[last].v2 {
            return s[last].r;
        }
        let k = s.partition_point(|x| x.v2 <= v2) - 1;
        let t = (v2 - s[k].v2) / (s[k + 1].v2 - s[k].v2);
        s[k].r + t * (s[k + 1].r - s[k].r)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        write_csv(
            out,
            &SAMPLE_HEADER,
            self.samples
                .iter()
                .map(|s| (s.v2, self.v3, s.theta, s.r, s.i1, self.temperature)),
        )
    }
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Read current against `V2` at fixed `V3`. Above 0 K every point averages
/// `repeats` trajectories, each on its own stream so the curve does not
/// depend on scheduling.
pub fn transfer_curve(
    device: &Device,
    v1: f64,
    v2_range: (f64, f64),
    n_points: usize,
    v3: f64,
    sim: &SimOptions,
    repeats: usize,
) -> Result<TransferCurve> {
    if n_points < MIN_POINTS {
        return Err(invalid("n_points", format!("need at least {MIN_POINTS}")));
    }
    if !(v2_range.1 > v2_range.0) {
        return Err(invalid("v2_range", "upper bound must exceed lower bound"));
    }
    if !v1.is_finite() {
        return Err(invalid("v1", "must be finite"));
    }
    sim.validate()?;
    let repeats = if sim.temperature > 0.0 {
        repeats.max(1)
    } else {
        1
    };
    let grid = linspace(v2_range.0, v2_range.1, n_points);

    let jobs: Vec<(usize, usize)> = (0..n_points)
        .flat_map(|k| (0..repeats).map(move |r| (k, r)))
        .collect();
    let thetas: Vec<f64> = jobs
        .par_iter()
        .map(|&(k, r)| {
            let mut rng = trajectory_rng(sim.rng_seed, (k * repeats + r) as u64);
            let res = device.steady_state_with_rng(grid[k], v3, sim, &mut rng)?;
            if !res.converged {
                return Err(Error::NotConverged {
                    v2: grid[k],
                    v3,
                    max_time: sim.max_time,
                });
            }
            Ok(res.final_state.theta)
        })
        .collect::<Result<_>>()?;

    let samples = grid
        .iter()
        .zip(thetas.chunks(repeats))
        .map(|(&v2, chunk)| {
            let rs: Vec<f64> = chunk
                .iter()
                .map(|&t| device.resistance_from_angle(t))
                .collect();
            let (theta, theta_std) = mean_std(chunk);
            let (r, r_std) = mean_std(&rs);
            TransferSample {
                v2,
                theta,
                r,
                i1: v1 / r,
                theta_std,
                r_std,
            }
        })
        .collect();

    Ok(TransferCurve {
        v1,
        v3,
        temperature: sim.temperature,
        repeats,
        samples,
    })
}
