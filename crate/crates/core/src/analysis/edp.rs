use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{search_energy, EnergyModel};
use crate::array::TcamArray;
use crate::cell::{encode_search, stored_gate_voltage, EncodingScheme, TernarySymbol, Word};
use crate::device::Device;
use crate::error::{invalid, Error, Result};
use crate::export::write_csv;
use crate::magnetodynamics::SimOptions;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdpPoint {
    pub frequency: f64,
    pub energy_per_search: f64,
    pub delay: f64,
    pub edp: f64,
    /// False when one clock period is shorter than the device settles.
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdpCurve {
    pub settle_time: f64,
    pub sense_delay: f64,
    pub points: Vec<EdpPoint>,
    /// Index of the lowest EDP among feasible points.
    pub min_index: usize,
}

pub const EDP_HEADER: [&str; 7] = [
    "frequency_Hz",
    "energy_J",
    "delay_s",
    "edp_Js",
    "feasible",
    "is_min",
    "settle_time_s",
];

impl EdpCurve {
    pub fn minimum(&self) -> &EdpPoint {
        &self.points[self.min_index]
    }

    pub fn has_interior_minimum(&self) -> bool {
        self.min_index > 0 && self.min_index + 1 < self.points.len()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let rows = self.points.iter().enumerate().map(|(k, p)| {
            (
                p.frequency,
                p.energy_per_search,
                p.delay,
                p.edp,
                p.feasible,
                k == self.min_index,
                self.settle_time,
            )
        });
        write_csv(out, &EDP_HEADER, rows)
    }
}

/// Angle band around the final state that counts as settled for timing, degrees.
pub const SETTLE_BAND_DEG: f64 = 1.0;

/// Slowest time, over all nine `(stored, search)` drive points and starting
/// unstrained, after which `theta` stays within [`SETTLE_BAND_DEG`] of its
/// final value. Includes the stress ramp.
pub fn drive_settle_time(device: &Device, enc: &EncodingScheme, opts: &SimOptions) -> Result<f64> {
    let drives: Vec<(f64, f64)> = TernarySymbol::ALL
        .into_iter()
        .flat_map(|t| {
            TernarySymbol::ALL.map(move |s| (encode_search(s, enc), stored_gate_voltage(t, enc)))
        })
        .collect();
    let opts = SimOptions {
        temperature: 0.0,
        record_trajectory: true,
        ..*opts
    };
    let times = drives
        .par_iter()
        .map(|&(v2, v3)| {
            let r = device.steady_state(v2, v3, &opts)?;
            if !r.converged {
                return Err(Error::NotConverged {
                    v2,
                    v3,
                    max_time: opts.max_time,
                });
            }
            let last = r.final_state.theta;
            let traj = r.trajectory.unwrap_or_default();
            let outside = traj.iter().rposition(|p| {
                let d = (p.theta - last).rem_euclid(360.0);
                d.min(360.0 - d) > SETTLE_BAND_DEG
            });
            Ok(outside
                .and_then(|k| traj.get(k + 1))
                .map_or(0.0, |p| p.time))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(times.into_iter().fold(0.0, f64::max))
}

/// Fraction of `C V^2` dissipated when a line with time constant `tau` is
/// driven by a linear ramp of duration `ramp` (1 for a step, `~2 tau/ramp`
/// when slow).
pub fn ramp_loss_factor(ramp: f64, tau: f64) -> f64 {
    let x = ramp / tau;
    if x < 1e-6 {
        return 1.0 - x / 3.0;
    }
    (2.0 / x) * (1.0 - (1.0 - (-x).exp()) / x)
}

pub fn log_frequencies(f_min: f64, f_max: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![f_min];
    }
    let (a, b) = (f_min.ln(), f_max.ln());
    (0..n)
        .map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Energy-delay product against clock frequency.
///
/// A search takes `max(settle, sense, 1/f)`. Search lines ramp over half a
/// period through the driver resistance, stored gates are refreshed every
/// `refresh_period` and that cost is shared among the searches in between.
/// `workload` is searched in order starting from an all-`X` bus.
pub fn edp_sweep(
    array: &TcamArray,
    model: &EnergyModel,
    workload: &[Word],
    settle_time: f64,
    sense_delay: f64,
    freq_range: (f64, f64),
    n_points: usize,
) -> Result<EdpCurve> {
    model.validate()?;
    let (f_min, f_max) = freq_range;
    if !(f_min > 0.0 && f_max > f_min && f_max.is_finite()) {
        return Err(invalid("frequency", "need 0 < f_min < f_max"));
    }
    if n_points < 2 {
        return Err(invalid("points", "need at least two"));
    }
    if workload.is_empty() {
        return Err(invalid("workload", "need at least one search word"));
    }
    let mut prev: Word = vec![TernarySymbol::DontCare; array.word_length()];
    let (mut lines, mut sense) = (0.0, 0.0);
    for w in workload {
        let e = search_energy(array, w, &prev, model)?;
        lines += e.lines;
        sense += e.sense;
        prev.clone_from(w);
    }
    let k = workload.len() as f64;
    let (lines, sense) = (lines / k, sense / k);
    let refresh = model.refresh_energy(array);
    let tau = model.driver_resistance * model.line_capacitance(array.columns().len());
    let floor = settle_time.max(sense_delay);

    let points: Vec<EdpPoint> = log_frequencies(f_min, f_max, n_points)
        .into_iter()
        .map(|f| {
            let period = 1.0 / f;
            let delay = floor.max(period);
            let energy = sense
                + lines * ramp_loss_factor(0.5 * period, tau)
                + refresh * delay / model.refresh_period;
            EdpPoint {
                frequency: f,
                energy_per_search: energy,
                delay,
                edp: energy * delay,
                feasible: period >= floor,
            }
        })
        .collect();
    let min_index = points
        .iter()
        .enumerate()
        .filter(|(_, p)| p.feasible)
        .min_by(|a, b| a.1.edp.total_cmp(&b.1.edp))
        .map(|(k, _)| k)
        .ok_or_else(|| {
            Error::InvalidConfiguration(format!(
                "every frequency in [{f_min:e}, {f_max:e}] Hz is faster than the {floor:e} s settle bound"
            ))
        })?;
    Ok(EdpCurve {
        settle_time,
        sense_delay,
        points,
        min_index,
    })
}
