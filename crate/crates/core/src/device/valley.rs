use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Device, TransferCurve};
use crate::error::{Error, Result};
use crate::magnetodynamics::SimOptions;

/// Offsets from the valley center at which floors are read, V.
pub const FLOOR_OFFSETS: [f64; 4] = [-0.4, -0.2, 0.2, 0.4];

const SCAN_STEP: f64 = 10e-3;
const BISECTION_STEPS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValleyShape {
    pub center_v2: f64,
    /// Highest sampled resistance, Ohm.
    pub r_peak: f64,
    /// Largest and smallest resistance at the floor offsets, Ohm.
    pub r_floor_worst: f64,
    pub r_floor_best: f64,
    /// Full width at half the peak excursion above the curve minimum, V.
    pub width: f64,
    pub peak_to_floor: f64,
}

/// Peak of the parabola through three points, or the middle point when
/// they are not concave.
fn parabola_vertex(x: [f64; 3], y: [f64; 3]) -> f64 {
    let denom = (x[0] - x[1]) * (x[0] - x[2]) * (x[1] - x[2]);
    let a = (x[2] * (y[1] - y[0]) + x[1] * (y[0] - y[2]) + x[0] * (y[2] - y[1])) / denom;
    let b =
        (x[2] * x[2] * (y[0] - y[1]) + x[1] * x[1] * (y[2] - y[0]) + x[0] * x[0] * (y[1] - y[2]))
            / denom;
    if !(a < 0.0) {
        return x[1];
    }
    (-b / (2.0 * a)).clamp(x[0], x[2])
}

fn crossing(x0: f64, y0: f64, x1: f64, y1: f64, level: f64) -> f64 {
    if y1 == y0 {
        return x0;
    }
    x0 + (level - y0) * (x1 - x0) / (y1 - y0)
}

pub fn characterize_valley(curve: &TransferCurve) -> Result<ValleyShape> {
    let s = &curve.samples;
    if s.len() < 3 {
        return Err(Error::NoValley);
    }
    let (k, peak) = s
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, x)| {
            if x.r > acc.1 {
                (i, x.r)
            } else {
                acc
            }
        });
    let last = s.len() - 1;
    if k == 0 || k == last || !(peak > s[0].r && peak > s[last].r) {
        return Err(Error::NoValley);
    }
    let center = parabola_vertex(
        [s[k - 1].v2, s[k].v2, s[k + 1].v2],
        [s[k - 1].r, s[k].r, s[k + 1].r],
    );

    let (lo, hi) = (s[0].v2, s[last].v2);
    let mut floors: Vec<f64> = FLOOR_OFFSETS
        .iter()
        .map(|o| center + o)
        .filter(|v| *v >= lo && *v <= hi)
        .map(|v| curve.resistance_at(v))
        .collect();
    if floors.is_empty() {
        floors = vec![s[0].r, s[last].r];
    }
    let worst = floors
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max)
        .min(peak);
    let best = floors.iter().cloned().fold(f64::INFINITY, f64::min);

    let base = s.iter().map(|x| x.r).fold(f64::INFINITY, f64::min);
    let level = base + 0.5 * (peak - base);
    let mut left = s[0].v2;
    for i in (0..k).rev() {
        if s[i].r < level {
            left = crossing(s[i].v2, s[i].r, s[i + 1].v2, s[i + 1].r, level);
            break;
        }
    }
    let mut right = s[last].v2;
    for i in (k + 1)..=last {
        if s[i].r < level {
            right = crossing(s[i - 1].v2, s[i - 1].r, s[i].v2, s[i].r, level);
            break;
        }
    }

    Ok(ValleyShape {
        center_v2: center,
        r_peak: peak,
        r_floor_worst: worst,
        r_floor_best: best,
        width: right - left,
        peak_to_floor: peak / worst,
    })
}

/// Drive `V2` at which the free layer ends antiparallel to the fixed layer
/// (`theta = 180`), for fixed `V3`. Coarse scan of `window`, then bisection.
pub fn find_valley_center(
    device: &Device,
    v3: f64,
    window: (f64, f64),
    opts: &SimOptions,
) -> Result<f64> {
    let vmax = device.config().piezo.max_voltage();
    let lo = window.0.max(-vmax);
    let hi = window.1.min(vmax);
    let n = ((hi - lo) / SCAN_STEP).ceil().max(1.0) as usize;
    let angle = |v2: f64| device.steady_angle(v2, v3, opts);

    let mut a = lo;
    if angle(a)? >= 180.0 {
        return Err(Error::NoValley);
    }
    let mut bracket = None;
    for k in 1..=n {
        let b = (lo + k as f64 * SCAN_STEP).min(hi);
        let tb = angle(b)?;
        if tb >= 180.0 {
            bracket = Some(b);
            break;
        }
        a = b;
    }
    let mut b = bracket.ok_or(Error::NoValley)?;
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (a + b);
        if angle(mid)? < 180.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalibrationPoint {
    pub v3: f64,
    pub center_v2: f64,
}

/// Valley position against `V3`, summarized by the offset `V_F` of the
/// match relation `V3 = V2 + V_F`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviceCalibration {
    pub v_f: f64,
    pub valley_shift_per_v3: Vec<CalibrationPoint>,
}

/// `V3` levels of the default calibration sweep, V. Above ~0.48 V the
/// valley drive point lifts the free layer out of plane.
pub const DEFAULT_CALIBRATION_LEVELS: [f64; 10] =
    [0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45];

impl DeviceCalibration {
    /// Sweep `V3` over `levels` and fit the unit-slope line
    /// `center = V3 - V_F`.
    pub fn measure(device: &Device, levels: &[f64], opts: &SimOptions) -> Result<Self> {
        if levels.len() < 2 {
            return Err(Error::Calibration("need at least two V3 levels".into()));
        }
        let points: Vec<CalibrationPoint> = levels
            .par_iter()
            .map(|&v3| {
                let center = find_valley_center(device, v3, (v3 - 0.3, v3 + 0.4), opts)?;
                Ok(CalibrationPoint {
                    v3,
                    center_v2: center,
                })
            })
            .collect::<Result<_>>()?;
        for w in points.windows(2) {
            if !(w[1].v3 > w[0].v3) {
                return Err(Error::Calibration("V3 levels must be increasing".into()));
            }
            if !(w[1].center_v2 > w[0].center_v2) {
                return Err(Error::Calibration(format!(
                    "valley center not monotone between V3 = {} and {} V",
                    w[0].v3, w[1].v3
                )));
            }
        }
        let v_f = points.iter().map(|p| p.v3 - p.center_v2).sum::<f64>() / points.len() as f64;
        Ok(Self {
            v_f,
            valley_shift_per_v3: points,
        })
    }

    /// Valley center for a given `V3`, interpolated in the table and
    /// extrapolated with the fitted line outside it.
    pub fn center_for(&self, v3: f64) -> f64 {
        let t = &self.valley_shift_per_v3;
        if v3 < t[0].v3 || v3 > t[t.len() - 1].v3 {
            return v3 - self.v_f;
        }
        let k = t.partition_point(|p| p.v3 <= v3).clamp(1, t.len() - 1) - 1;
        let f = (v3 - t[k].v3) / (t[k + 1].v3 - t[k].v3);
        t[k].center_v2 + f * (t[k + 1].center_v2 - t[k].center_v2)
    }

    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer_pretty(out, self)?;
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Calibration over the default `V3` levels at 0 K.
pub fn calibrate_offset(device: &Device, opts: &SimOptions) -> Result<DeviceCalibration> {
    DeviceCalibration::measure(device, &DEFAULT_CALIBRATION_LEVELS, opts)
}
