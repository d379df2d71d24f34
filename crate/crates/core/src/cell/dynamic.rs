use serde::{Deserialize, Serialize};

use super::{stored_gate_voltage, EncodingScheme, TernarySymbol};
use crate::error::{invalid, Result};

/// Leaky storage node at the V3 gate (global-refresh cell).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StorageNode {
    /// Leakage resistance to ground, Ohm.
    pub leak_resistance: f64,
    /// Node capacitance, F. Dominated by the piezoelectric electrode pair.
    pub capacitance: f64,
    /// Highest potential the node may hold, V.
    pub v3_max: f64,
}

impl Default for StorageNode {
    fn default() -> Self {
        Self {
            leak_resistance: 1e10,
            capacitance: 1.5e-15,
            v3_max: 0.7,
        }
    }
}

impl StorageNode {
    pub fn validate(&self) -> Result<()> {
        if !(self.leak_resistance > 0.0 && self.leak_resistance.is_finite()) {
            return Err(invalid("storage.leak_resistance", "must be positive"));
        }
        if !(self.capacitance > 0.0 && self.capacitance.is_finite()) {
            return Err(invalid("storage.capacitance", "must be positive"));
        }
        if !(self.v3_max > 0.0) {
            return Err(invalid("storage.v3_max", "must be positive"));
        }
        Ok(())
    }

    pub fn time_constant(&self) -> f64 {
        self.leak_resistance * self.capacitance
    }

    /// Time for a node starting at `v0` to lose `droop` volts.
    pub fn retention_time(&self, v0: f64, droop: f64) -> f64 {
        if droop >= v0 {
            return f64::INFINITY;
        }
        self.time_constant() * (v0 / (v0 - droop)).ln()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DynamicCellState {
    pub stored: TernarySymbol,
    /// Present storage potential, V.
    pub v3_node: f64,
    /// Time of the last write or refresh, s.
    pub last_refresh: f64,
}

impl DynamicCellState {
    /// Freshly written cell. The gate level is clamped into `[0, v3_max]`.
    pub fn write(
        stored: TernarySymbol,
        enc: &EncodingScheme,
        node: &StorageNode,
        now: f64,
    ) -> Self {
        Self {
            stored,
            v3_node: stored_gate_voltage(stored, enc).clamp(0.0, node.v3_max),
            last_refresh: now,
        }
    }

    pub fn refresh(&self, enc: &EncodingScheme, node: &StorageNode, now: f64) -> Self {
        Self::write(self.stored, enc, node, now)
    }
}

/// RC discharge of the storage node toward ground.
pub fn decay_storage(
    state: &DynamicCellState,
    dt: f64,
    leak_r: f64,
    node_c: f64,
) -> DynamicCellState {
    debug_assert!(dt >= 0.0);
    DynamicCellState {
        v3_node: state.v3_node * (-dt / (leak_r * node_c)).exp(),
        ..*state
    }
}
