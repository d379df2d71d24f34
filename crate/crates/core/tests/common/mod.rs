//! Reference computations written independently of the library.
#![allow(dead_code)]

use std::f64::consts::PI;

use smtjsim::cell::TernarySymbol;
use smtjsim::device::DeviceConfig;
use smtjsim::magnetodynamics::{demag_factors, MU0};

pub fn ternary_match(t: TernarySymbol, s: TernarySymbol) -> bool {
    use TernarySymbol::DontCare;
    t == DontCare || s == DontCare || t == s
}

pub fn word_match(stored: &[TernarySymbol], search: &[TernarySymbol]) -> bool {
    stored.len() == search.len()
        && stored
            .iter()
            .zip(search)
            .all(|(t, s)| ternary_match(*t, *s))
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

pub fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(360.0);
    d.min(360.0 - d)
}

pub fn parallel(rs: &[f64]) -> f64 {
    1.0 / rs.iter().map(|r| 1.0 / r).sum::<f64>()
}

/// In-plane ground state from the free energy written out directly:
/// shape, magnetoelastic and dipole terms, scanned at 0.01 degree.
pub fn in_plane_ground_state(cfg: &DeviceConfig, v2: f64, v3: f64) -> f64 {
    let per_volt = 1.0 / (cfg.piezo.thickness * cfg.piezo.field_per_stress);
    in_plane_ground_state_stress(cfg, v2 * per_volt, v3 * per_volt)
}

pub fn in_plane_ground_state_stress(cfg: &DeviceConfig, sx: f64, sy: f64) -> f64 {
    let m = &cfg.magnet;
    let n = demag_factors(m).expect("valid geometry");
    let reference = 180.0 - cfg.skew_angle;
    let (rs, rc) = f64::to_radians(reference).sin_cos();
    let (bx, by) = (-cfg.dipole_field * rc, -cfg.dipole_field * rs);
    let ms = m.saturation_magnetization;
    let energy = |phi: f64| {
        let (s, c) = phi.sin_cos();
        0.5 * MU0 * ms * ms * (n.nx * c * c + n.ny * s * s)
            + 1.5 * m.magnetostriction * (sx * c * c + sy * s * s)
            - ms * (bx * c + by * s)
    };
    let (mut best, mut best_phi) = (f64::INFINITY, 0.0);
    for k in 0..36_000 {
        let phi = k as f64 * 0.01;
        let e = energy(phi.to_radians());
        if e < best {
            best = e;
            best_phi = phi;
        }
    }
    (reference - best_phi).rem_euclid(360.0)
}

/// Area shared by two unit circles whose centers are `d` apart.
fn lens_area(d: f64) -> f64 {
    if d >= 2.0 {
        return 0.0;
    }
    2.0 * (d / 2.0).acos() - 0.5 * d * (4.0 - d * d).sqrt()
}

/// Out-of-plane demagnetizing factor of an elliptic cylinder (full axes
/// `x_len`, `y_len`, height `t`) from the interaction of its two charged
/// faces, averaged over the volume:
///
/// `Nz = 1/(2 pi A t) * int C(u) (1/|u| - 1/sqrt(|u|^2 + t^2)) d^2u`
///
/// with `C(u)` the overlap of the ellipse and its copy shifted by `u`.
pub fn face_charge_nz(x_len: f64, y_len: f64, t: f64) -> f64 {
    let (a, b) = (0.5 * x_len, 0.5 * y_len);
    let area = PI * a * b;
    let n_phi = 256;
    let n_rho = 4000;
    let mut total = 0.0;
    for i in 0..n_phi {
        let phi = 2.0 * PI * (i as f64 + 0.5) / n_phi as f64;
        let (s, c) = phi.sin_cos();
        // ellipse-normalized distance per unit rho
        let k = ((c / a).powi(2) + (s / b).powi(2)).sqrt();
        let rho_max = 2.0 / k;
        let h = rho_max / n_rho as f64;
        // Simpson in rho; the polar Jacobian cancels the 1/rho singularity.
        let f = |rho: f64| (1.0 - rho / (rho * rho + t * t).sqrt()) * a * b * lens_area(k * rho);
        let mut sum = f(0.0) + f(rho_max);
        for j in 1..n_rho {
            sum += f(j as f64 * h) * if j % 2 == 1 { 4.0 } else { 2.0 };
        }
        total += sum * h / 3.0;
    }
    total *= 2.0 * PI / n_phi as f64;
    total / (2.0 * PI * area * t)
}
