//! Rotation sense under thermal noise.
//!
//! One recorded trajectory to show the path, then a batch of seeded
//! trajectories at the valley-centering drive.
//!
//!     cargo run --release --example chirality [trials]

use smtjsim::analysis::monte_carlo_rotation;
use smtjsim::device::Device;
use smtjsim::magnetodynamics::SimOptions;

fn main() -> smtjsim::Result<()> {
    let trials = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1000);
    let device = Device::standard();
    let drive = (0.069, 0.0);
    let opts = SimOptions {
        record_trajectory: true,
        max_time: 5e-9,
        ..SimOptions::default().at_temperature(300.0).with_seed(3)
    };

    let r = device.steady_state(drive.0, drive.1, &opts)?;
    for s in r.trajectory.iter().flatten().step_by(250) {
        println!(
            "{:6.3} ns  theta {:7.2}  mz {:+.3}",
            s.time * 1e9,
            s.theta,
            s.m.z
        );
    }
    println!(
        "net rotation {:+.1} deg -> {:?}",
        r.rotation_deg, r.chirality
    );

    let batch = SimOptions {
        record_trajectory: false,
        ..opts
    };
    let report = monte_carlo_rotation(&device, drive, &batch, trials, 2024)?;
    println!(
        "{} trials: {} clockwise, {} anticlockwise, {} unresolved; theta {:.1} +- {:.1}",
        report.trials,
        report.clockwise,
        report.anticlockwise,
        report.unresolved,
        report.theta_mean,
        report.theta_std
    );
    Ok(())
}
