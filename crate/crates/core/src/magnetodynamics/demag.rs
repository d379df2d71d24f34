//! Magnetometric demagnetizing factors.
//!
//! The free layer is an elliptic cylinder. Its in-plane factors come from the
//! surface-charge double integral over the lateral wall,
//!
//! ```text
//! N_xx = 1/(4 pi V) * sum_{wall x wall} n_x(r) n_x(r') / |r - r'| dS dS'
//! ```
//!
//! with the two height integrals done in closed form. The remaining
//! logarithmic singularity along the diagonal is subtracted analytically, the
//! smooth remainder is summed with the periodic midpoint rule, and two panel
//! counts are combined with one Richardson step. `N_zz` closes the trace.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::MagnetParams;
use crate::error::{Error, Result};

const COARSE_PANELS: usize = 256;
const FINE_PANELS: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DemagFactors {
    pub nx: f64,
    pub ny: f64,
    pub nz: f64,
}

impl DemagFactors {
    pub fn sum(&self) -> f64 {
        self.nx + self.ny + self.nz
    }
}

/// Demagnetizing factors of the free layer (major axis along x).
pub fn demag_factors(params: &MagnetParams) -> Result<DemagFactors> {
    elliptic_cylinder_demag(params.major_axis, params.minor_axis, params.thickness)
}

/// Elliptic cylinder with full in-plane axes `x_len`, `y_len` and height
/// `thickness`.
pub fn elliptic_cylinder_demag(x_len: f64, y_len: f64, thickness: f64) -> Result<DemagFactors> {
    check_dims(x_len, y_len, thickness)?;
    // scale-free: lengths in units of the x semi-axis
    let a = 1.0;
    let b = y_len / x_len;
    let t = 2.0 * thickness / x_len;

    let (cx, cy) = lateral_factors(a, b, t, COARSE_PANELS);
    let (fx, fy) = lateral_factors(a, b, t, FINE_PANELS);
    let nx = (4.0 * fx - cx) / 3.0;
    let ny = (4.0 * fy - cy) / 3.0;
    Ok(DemagFactors {
        nx,
        ny,
        nz: 1.0 - nx - ny,
    })
}

/// Closed-form factors of the ellipsoid with the given full axes, through
/// Carlson's symmetric integral `R_D`.
pub fn ellipsoid_demag_factors(x_len: f64, y_len: f64, z_len: f64) -> Result<DemagFactors> {
    check_dims(x_len, y_len, z_len)?;
    let (a, b, c) = (x_len / 2.0, y_len / 2.0, z_len / 2.0);
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let pre = a * b * c / 3.0;
    Ok(DemagFactors {
        nx: pre * carlson_rd(b2, c2, a2),
        ny: pre * carlson_rd(a2, c2, b2),
        nz: pre * carlson_rd(a2, b2, c2),
    })
}

fn check_dims(x: f64, y: f64, z: f64) -> Result<()> {
    if [x, y, z].iter().all(|d| d.is_finite() && *d > 0.0) {
        Ok(())
    } else {
        Err(Error::InvalidGeometry(format!(
            "all dimensions must be positive, got {x:e} x {y:e} x {z:e}"
        )))
    }
}

/// Double height integral of 1/|r - r'| for two vertical segments of
/// length `t` at horizontal distance `rho`.
fn height_kernel(rho: f64, t: f64) -> f64 {
    let hyp = (rho * rho + t * t).sqrt();
    2.0 * (t * (t / rho).asinh() - t * t / (rho + hyp))
}

fn lateral_factors(a: f64, b: f64, t: f64, n: usize) -> (f64, f64) {
    let h = 2.0 * PI / n as f64;
    let u: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * h).collect();
    let (sin_u, cos_u): (Vec<f64>, Vec<f64>) = u.iter().map(|u| u.sin_cos()).unzip();
    let px: Vec<f64> = cos_u.iter().map(|c| a * c).collect();
    let py: Vec<f64> = sin_u.iter().map(|s| b * s).collect();

    let mut ix = 0.0;
    let mut iy = 0.0;
    for i in 0..n {
        // diagonal limit of the regularized kernel
        let speed = (a * a * sin_u[i] * sin_u[i] + b * b * cos_u[i] * cos_u[i]).sqrt();
        let g = 2.0 * t * ((2.0 * t / speed).ln() - 1.0);
        ix += cos_u[i] * cos_u[i] * g;
        iy += sin_u[i] * sin_u[i] * g;
        for j in (i + 1)..n {
            let dx = px[i] - px[j];
            let dy = py[i] - py[j];
            let rho = (dx * dx + dy * dy).sqrt();
            let chord = (2.0 * (0.5 * (u[i] - u[j])).sin()).abs();
            let g = height_kernel(rho, t) + 2.0 * t * chord.ln();
            ix += 2.0 * cos_u[i] * cos_u[j] * g;
            iy += 2.0 * sin_u[i] * sin_u[j] * g;
        }
    }
    // -ln|2 sin(d/2)| against cos u cos u' (or sin u sin u') integrates to pi^2
    let singular = 2.0 * t * PI * PI;
    ix = ix * h * h + singular;
    iy = iy * h * h + singular;

    let volume = PI * a * b * t;
    (
        b * b * ix / (4.0 * PI * volume),
        a * a * iy / (4.0 * PI * volume),
    )
}

/// Carlson's degenerate elliptic integral R_D(x, y, z).
fn carlson_rd(mut x: f64, mut y: f64, mut z: f64) -> f64 {
    const TOL: f64 = 1.0e-4;
    let mut sum = 0.0;
    let mut fac = 1.0;
    loop {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (z + lambda));
        fac *= 0.25;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        let ave = 0.2 * (x + y + 3.0 * z);
        let (dx, dy, dz) = ((ave - x) / ave, (ave - y) / ave, (ave - z) / ave);
        if dx.abs().max(dy.abs()).max(dz.abs()) < TOL {
            let ea = dx * dy;
            let eb = dz * dz;
            let ec = ea - eb;
            let ed = ea - 6.0 * eb;
            let ee = ed + ec + ec;
            const C1: f64 = 3.0 / 14.0;
            const C2: f64 = 1.0 / 6.0;
            const C3: f64 = 9.0 / 22.0;
            const C4: f64 = 3.0 / 26.0;
            const C5: f64 = 0.25 * C3;
            const C6: f64 = 1.5 * C4;
            let series = 1.0
                + ed * (-C1 + C5 * ed - C6 * dz * ee)
                + dz * (C2 * ee + dz * (-C3 * ec + dz * C4 * ea));
            return 3.0 * sum + fac * series / (ave * ave.sqrt());
        }
    }
}
