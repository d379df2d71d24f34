//! The minor-axis gate moves the valley.
//!
//! Calibrates the offset of `V3 = V2 + V_F`, shows the valley under each
//! stored-symbol gate voltage, then repeats the V3 = 0 curve for three
//! dipole strengths.

use smtjsim::cell::{stored_gate_voltage, EncodingScheme, TernarySymbol};
use smtjsim::device::{
    calibrate_offset, characterize_valley, transfer_curve, Device, DeviceConfig, DEFAULT_V1,
    ENCODING_RANGE,
};
use smtjsim::magnetodynamics::SimOptions;

fn main() -> smtjsim::Result<()> {
    let device = Device::standard();
    let opts = SimOptions::default();
    let cal = calibrate_offset(&device, &opts)?;
    println!("V_F = {:.4} V", cal.v_f);
    for p in &cal.valley_shift_per_v3 {
        println!("  V3 {:.2} -> center {:.4}", p.v3, p.center_v2);
    }

    let enc = EncodingScheme::from_calibration(&cal);
    for t in TernarySymbol::ALL {
        let g = stored_gate_voltage(t, &enc);
        match transfer_curve(&device, DEFAULT_V1, ENCODING_RANGE, 161, g, &opts, 1)
            .and_then(|c| characterize_valley(&c))
        {
            Ok(v) => println!("stored {t}: V3 = {g:.3} V, valley at {:.3} V", v.center_v2),
            Err(e) => println!("stored {t}: V3 = {g:.3} V, {e}"),
        }
    }

    for b in [3.5e-3, 7.05e-3, 14e-3] {
        let d = Device::new(DeviceConfig {
            dipole_field: b,
            ..DeviceConfig::default()
        })?;
        let curve = transfer_curve(&d, DEFAULT_V1, ENCODING_RANGE, 161, 0.0, &opts, 1)?;
        let v = characterize_valley(&curve)?;
        println!(
            "dipole {:5.2} mT: center {:.4} V, width {:5.1} mV, worst floor {:.0} ohm",
            b * 1e3,
            v.center_v2,
            v.width * 1e3,
            v.r_floor_worst
        );
    }
    Ok(())
}
