//! Keeping the stored gate voltage alive.
//!
//! Left alone, the V3 node leaks and the valley drifts toward the search
//! levels. The local-refresh pair of MTJs regenerates the level; this
//! example programs the pair for each symbol and shows the decay it undoes.

use smtjsim::cell::{
    decay_storage, program_local_cell, refresh_voltage, stored_gate_voltage, DynamicCellState,
    EncodingScheme, LocalRefreshCellState, RefreshBias, RefreshMtjParams, StorageNode,
    TernarySymbol,
};
use smtjsim::device::Device;

fn main() -> smtjsim::Result<()> {
    let enc = EncodingScheme::standard(-0.069);
    let params = RefreshMtjParams::default();
    let bias = RefreshBias::solve(&params, &enc, 1.0)?;
    println!(
        "bias {:.1} uA through a {:.0} ohm trim from {} V",
        bias.bias_current * 1e6,
        bias.series_trim,
        bias.v_dd
    );
    for t in TernarySymbol::ALL {
        let prog = program_local_cell(t, &params)?;
        let steps: Vec<String> = prog
            .trace
            .iter()
            .map(|s| {
                format!(
                    "{:+.0}uA/{:.1}ns -> {}",
                    s.pulse.current * 1e6,
                    s.pulse.width * 1e9,
                    s.after
                )
            })
            .collect();
        let cell = LocalRefreshCellState::program(t, params, bias)?;
        println!(
            "{t}: {}  V3 = {:.3} V (target {:.3})",
            steps.join(", "),
            refresh_voltage(&cell),
            stored_gate_voltage(t, &enc)
        );
    }

    let node = StorageNode::default();
    let device = Device::standard();
    println!("\ntau = {:.1} us", node.time_constant() * 1e6);
    let cell = DynamicCellState::write(TernarySymbol::DontCare, &enc, &node, 0.0);
    for us in [0.0, 2.0, 5.0, 10.0, 20.0] {
        let d = decay_storage(&cell, us * 1e-6, node.leak_resistance, node.capacitance);
        let r = device.resistance_at(enc.search_volts.one, d.v3_node)?;
        println!(
            "t = {us:4.1} us: V3 {:.3} V, R(X stored, search 1) = {r:.0} ohm",
            d.v3_node
        );
    }
    println!(
        "25 mV droop after {:.2} us",
        node.retention_time(cell.v3_node, 0.025) * 1e6
    );
    Ok(())
}
