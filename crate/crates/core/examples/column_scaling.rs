//! How long can a column get?
//!
//! Builds the device table, extracts the single-cell bounds and prints the
//! worst-case match / one-bit-mismatch column resistances against n.
//!
//!     cargo run --release --example column_scaling [chi]

use smtjsim::array::{column_stats, max_column_length, scaling_curve};
use smtjsim::cell::EncodingScheme;
use smtjsim::device::{calibrate_offset, Device, DeviceConfig, JunctionParams};
use smtjsim::harness::{scaling_summary, table_for, RunConfig, TableSettings};

fn main() -> smtjsim::Result<()> {
    let chi: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1.0);
    let mut cfg = RunConfig {
        table: TableSettings {
            step: 0.01,
            ..Default::default()
        },
        ..Default::default()
    };
    let area = cfg.device.magnet.area();
    cfg.device = DeviceConfig {
        junction: JunctionParams::from_ra(10.0, area, chi),
        ..cfg.device
    };
    let device = Device::new(cfg.device)?;
    let enc = EncodingScheme::from_calibration(&calibrate_offset(&device, &cfg.sim)?);
    let table = table_for(&cfg, &device, &enc)?;
    let stats = column_stats(&table, &enc)?;
    println!(
        "chi = {chi}: R_match_w {:.1}, R_match_b {:.1}, R_mismatch {:.1} ohm",
        stats.r_match_w, stats.r_match_b, stats.r_mismatch
    );
    println!("   n   R_match,n,w  R_mismatch,n,w    delta R");
    for p in scaling_curve(&stats, 40)? {
        println!(
            "{:4} {:12.2} {:15.2} {:10.3}",
            p.n, p.r_match_col, p.r_mismatch_col, p.delta_r
        );
    }
    let s = scaling_summary(&stats, 200, 0.0)?;
    println!("delta R <= 0 from n = {:?}", s.crossover);
    for margin in [0.0, 1.0, 10.0, 100.0] {
        println!(
            "margin {margin:6.1} ohm -> n_max {}",
            max_column_length(&stats, margin)?
        );
    }
    Ok(())
}
