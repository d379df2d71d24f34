//! Read current against the major-axis drive.
//!
//! Sweeps V2 at V3 = 0, once at 0 K and once at 300 K from 16 noisy
//! trajectories per point, and reports the valley.
//!
//!     cargo run --release --example transfer_curve [out.csv]

use std::fs::File;

use smtjsim::device::{characterize_valley, transfer_curve, Device, DEFAULT_V1, ENCODING_RANGE};
use smtjsim::magnetodynamics::SimOptions;

fn main() -> smtjsim::Result<()> {
    let device = Device::standard();
    let cold = SimOptions::default();
    let curve = transfer_curve(&device, DEFAULT_V1, ENCODING_RANGE, 33, 0.0, &cold, 1)?;
    let warm = transfer_curve(
        &device,
        DEFAULT_V1,
        ENCODING_RANGE,
        33,
        0.0,
        &cold.at_temperature(300.0),
        16,
    )?;

    println!("  V2 (V)   theta0   R0 (ohm)   I1 (uA)   R300 (ohm)  +-");
    for (a, b) in curve.samples.iter().zip(&warm.samples) {
        println!(
            "{:7.3} {:8.2} {:10.1} {:9.4} {:11.1} {:5.1}",
            a.v2,
            a.theta,
            a.r,
            a.i1 * 1e6,
            b.r,
            b.r_std
        );
    }
    let v = characterize_valley(&curve)?;
    println!(
        "valley at {:.4} V, peak {:.1} ohm, width {:.1} mV, peak/floor {:.3}",
        v.center_v2,
        v.r_peak,
        v.width * 1e3,
        v.peak_to_floor
    );

    if let Some(path) = std::env::args().nth(1) {
        curve.write_csv(File::create(&path)?)?;
        println!("wrote {path}");
    }
    Ok(())
}
