//! Energy-delay product against clock frequency for a 64 x 144 array.
//!
//!     cargo run --release --example edp_sweep [out.csv]

use std::fs::File;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use smtjsim::analysis::{drive_settle_time, edp_sweep, switching_energy, EnergyModel};
use smtjsim::array::{SenseAmpConfig, TcamArray};
use smtjsim::cell::EncodingScheme;
use smtjsim::device::{calibrate_offset, Device};
use smtjsim::harness::{random_word, table_for, RunConfig, TableSettings};

fn main() -> smtjsim::Result<()> {
    let cfg = RunConfig {
        table: TableSettings {
            step: 0.01,
            ..Default::default()
        },
        ..Default::default()
    };
    let device = Device::new(cfg.device)?;
    let enc = EncodingScheme::from_calibration(&calibrate_offset(&device, &cfg.sim)?);
    let table = Arc::new(table_for(&cfg, &device, &enc)?);

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let words = (0..64).map(|_| random_word(&mut rng, 144)).collect();
    let load: Vec<_> = (0..256).map(|_| random_word(&mut rng, 144)).collect();
    let sense = SenseAmpConfig::default();
    let array = TcamArray::new(words, 16, enc, table, sense)?;
    let model = EnergyModel::default();

    println!(
        "CV^2 of one gate at 0.4 V: {:.1} aJ",
        switching_energy(model.piezo_capacitance, 0.4) * 1e18
    );
    let settle = drive_settle_time(&device, &enc, &cfg.sim)?;
    let curve = edp_sweep(
        &array,
        &model,
        &load,
        settle,
        sense.settle_delay,
        (1e7, 1e10),
        31,
    )?;
    println!("settle {:.2} ns", settle * 1e9);
    println!("    f (Hz)      E (J)     D (s)    EDP (J s)");
    for (k, p) in curve.points.iter().enumerate() {
        let mark = if k == curve.min_index {
            " <- min"
        } else if !p.feasible {
            " (too fast)"
        } else {
            ""
        };
        println!(
            "{:10.3e} {:10.3e} {:9.3e} {:10.3e}{mark}",
            p.frequency, p.energy_per_search, p.delay, p.edp
        );
    }
    if let Some(path) = std::env::args().nth(1) {
        curve.write_csv(File::create(&path)?)?;
        println!("wrote {path}");
    }
    Ok(())
}
