use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::transfer::SAMPLE_HEADER;
use super::Device;
use crate::error::{invalid, Error, Result};
use crate::export::write_csv;
use crate::magnetodynamics::{trajectory_rng, SimOptions};

/// Voltage span every table must cover, V.
pub const ENCODING_RANGE: (f64, f64) = (-0.1, 0.7);
/// Coarsest admissible grid step, V.
pub const MAX_GRID_STEP: f64 = 25e-3;

const SNAP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub v2: f64,
    pub v3: f64,
    pub theta_deg: f64,
    pub r_ohm: f64,
    pub i1_a: f64,
    pub t_k: f64,
}

/// Precomputed `(V2, V3) -> R` map with bilinear interpolation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResistanceTable {
    v2: Vec<f64>,
    v3: Vec<f64>,
    /// Row-major over `v3`, then `v2`.
    theta: Vec<f64>,
    r: Vec<f64>,
    v1: f64,
    temperature: f64,
    /// Nodes whose relaxation hit `max_time` before settling; they hold the
    /// last integrated state.
    unsettled: Vec<(f64, f64)>,
}

/// Points `lo, lo + step, ...` up to and including `hi` (within rounding).
pub fn uniform_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    let mut g: Vec<f64> = (0..=n).map(|k| lo + k as f64 * step).collect();
    if hi - g[n] > SNAP {
        g.push(hi);
    }
    g
}

/// Uniform grid through `anchor` that covers `[lo, hi]`.
pub fn anchored_grid(lo: f64, hi: f64, step: f64, anchor: f64) -> Vec<f64> {
    let k0 = ((lo - anchor) / step - 1e-9).floor() as i64;
    let k1 = ((hi - anchor) / step + 1e-9).ceil() as i64;
    (k0..=k1).map(|k| anchor + k as f64 * step).collect()
}

fn check_grid(name: &str, g: &[f64]) -> Result<()> {
    if g.len() < 2 {
        return Err(invalid(name, "need at least two points"));
    }
    for w in g.windows(2) {
        if !(w[1] > w[0]) {
            return Err(invalid(name, "must be strictly increasing"));
        }
        if w[1] - w[0] > MAX_GRID_STEP + SNAP {
            return Err(invalid(name, "step exceeds 25 mV"));
        }
    }
    if g[0] > ENCODING_RANGE.0 + SNAP || g[g.len() - 1] < ENCODING_RANGE.1 - SNAP {
        return Err(invalid(name, "must cover [-0.1, 0.7] V"));
    }
    Ok(())
}

/// Cell index and fractional position of `x`; exact nodes give zero weight
/// to the neighbour.
fn locate(g: &[f64], x: f64) -> Option<(usize, f64)> {
    let last = g.len() - 1;
    if !(x >= g[0] - SNAP && x <= g[last] + SNAP) {
        return None;
    }
    let k = g.partition_point(|v| *v <= x + SNAP).clamp(1, last) - 1;
    if (x - g[k]).abs() <= SNAP {
        return Some((k, 0.0));
    }
    if (x - g[k + 1]).abs() <= SNAP {
        return Some((k + 1, 0.0));
    }
    Some((k, (x - g[k]) / (g[k + 1] - g[k])))
}

impl ResistanceTable {
    pub fn v2_grid(&self) -> &[f64] {
        &self.v2
    }

    pub fn v3_grid(&self) -> &[f64] {
        &self.v3
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn unsettled(&self) -> &[(f64, f64)] {
        &self.unsettled
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        j * self.v2.len() + i
    }

    /// Node values at grid indices.
    pub fn node(&self, i: usize, j: usize) -> (f64, f64) {
        let k = self.idx(i, j);
        (self.theta[k], self.r[k])
    }

    pub fn lookup(&self, v2: f64, v3: f64) -> Result<f64> {
        let out = || Error::OutOfTable { v2, v3 };
        let (i, t) = locate(&self.v2, v2).ok_or_else(out)?;
        let (j, u) = locate(&self.v3, v3).ok_or_else(out)?;
        let at = |di: usize, dj: usize| {
            let ii = (i + di).min(self.v2.len() - 1);
            let jj = (j + dj).min(self.v3.len() - 1);
            self.r[self.idx(ii, jj)]
        };
        let mut r = (1.0 - t) * (1.0 - u) * at(0, 0);
        if t > 0.0 {
            r += t * (1.0 - u) * at(1, 0);
        }
        if u > 0.0 {
            r += (1.0 - t) * u * at(0, 1);
        }
        if t > 0.0 && u > 0.0 {
            r += t * u * at(1, 1);
        }
        Ok(r)
    }

    pub fn rows(&self) -> impl Iterator<Item = TableRow> + '_ {
        self.v3.iter().enumerate().flat_map(move |(j, &v3)| {
            self.v2.iter().enumerate().map(move |(i, &v2)| {
                let (theta, r) = self.node(i, j);
                TableRow {
                    v2,
                    v3,
                    theta_deg: theta,
                    r_ohm: r,
                    i1_a: self.v1 / r,
                    t_k: self.temperature,
                }
            })
        })
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        write_csv(
            out,
            &SAMPLE_HEADER,
            self.rows()
                .map(|r| (r.v2, r.v3, r.theta_deg, r.r_ohm, r.i1_a, r.t_k)),
        )
    }
}

/// Relaxes the device at every grid node. Above 0 K each node gets one
/// trajectory on its own stream. Nodes that fail to settle are kept and
/// listed in [`ResistanceTable::unsettled`].
pub fn build_resistance_table(
    device: &Device,
    v1: f64,
    v2_grid: &[f64],
    v3_grid: &[f64],
    opts: &SimOptions,
) -> Result<ResistanceTable> {
    check_grid("v2_grid", v2_grid)?;
    check_grid("v3_grid", v3_grid)?;
    opts.validate()?;
    let n2 = v2_grid.len();
    let nodes: Vec<(f64, f64, bool)> = (0..n2 * v3_grid.len())
        .into_par_iter()
        .map(|k| {
            let (v2, v3) = (v2_grid[k % n2], v3_grid[k / n2]);
            let mut rng = trajectory_rng(opts.rng_seed, k as u64);
            let res = device.steady_state_with_rng(v2, v3, opts, &mut rng)?;
            let theta = res.final_state.theta;
            Ok((theta, device.resistance_from_angle(theta), res.converged))
        })
        .collect::<Result<_>>()?;
    let unsettled = nodes
        .iter()
        .enumerate()
        .filter(|(_, n)| !n.2)
        .map(|(k, _)| (v2_grid[k % n2], v3_grid[k / n2]))
        .collect();
    let (theta, r) = nodes.into_iter().map(|(t, r, _)| (t, r)).unzip();
    Ok(ResistanceTable {
        v2: v2_grid.to_vec(),
        v3: v3_grid.to_vec(),
        theta,
        r,
        v1,
        temperature: opts.temperature,
        unsettled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_table() -> (Device, ResistanceTable) {
        let d = Device::standard();
        let g2 = uniform_grid(-0.1, 0.7, 0.025);
        let g3 = anchored_grid(-0.1, 0.7, 0.025, 0.131);
        let t = build_resistance_table(&d, 0.01, &g2, &g3, &SimOptions::default()).unwrap();
        (d, t)
    }

    #[test]
    fn grids() {
        let g = uniform_grid(-0.1, 0.7, 0.025);
        assert_eq!(g.len(), 33);
        assert!((g[32] - 0.7).abs() < 1e-12);
        let a = anchored_grid(-0.1, 0.7, 0.005, 0.131);
        assert!(a[0] <= -0.1 && *a.last().unwrap() >= 0.7);
        assert!(a.iter().any(|v| (v - 0.131).abs() < 1e-15));
        assert!(check_grid("g", &uniform_grid(-0.1, 0.7, 0.05)).is_err());
        assert!(check_grid("g", &uniform_grid(0.0, 0.7, 0.01)).is_err());
    }

    #[test]
    fn nodes_are_exact_and_cells_bounded() {
        let (d, t) = small_table();
        let (i, j) = (6, 9);
        let (v2, v3) = (t.v2_grid()[i], t.v3_grid()[j]);
        assert_eq!(t.lookup(v2, v3).unwrap(), d.resistance_at(v2, v3).unwrap());
        let mid = t
            .lookup(
                0.5 * (v2 + t.v2_grid()[i + 1]),
                0.5 * (v3 + t.v3_grid()[j + 1]),
            )
            .unwrap();
        let corners = [(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)].map(|(a, b)| t.node(a, b).1);
        let lo = corners.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = corners.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(mid >= lo - 1e-9 && mid <= hi + 1e-9);
        assert!(matches!(t.lookup(0.8, 0.0), Err(Error::OutOfTable { .. })));
    }

    #[test]
    fn csv_shape() {
        let (_, t) = small_table();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "V2,V3,theta_deg,R_ohm,I1_A,T_K");
        assert_eq!(lines.count(), t.v2_grid().len() * t.v3_grid().len());
    }
}
