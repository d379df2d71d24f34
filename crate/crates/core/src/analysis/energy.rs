use serde::{Deserialize, Serialize};

use crate::array::TcamArray;
use crate::cell::{encode_search, stored_gate_voltage, TernarySymbol};
use crate::error::{invalid, Error, Result};

/// Energy to charge capacitance `c` to `v`: `C V^2`.
pub fn switching_energy(c: f64, v: f64) -> f64 {
    c * v * v
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnergyModel {
    /// Electrode-pair capacitance per cell, F.
    pub piezo_capacitance: f64,
    /// Search-line wiring per cell, F.
    pub search_line_capacitance: f64,
    /// Per block evaluation, J.
    pub senseamp_energy: f64,
    /// Search-line driver output resistance, Ohm.
    pub driver_resistance: f64,
    /// Interval between refreshes of the stored gate voltages, s.
    pub refresh_period: f64,
}

impl Default for EnergyModel {
    fn default() -> Self {
        Self {
            piezo_capacitance: 1.5e-15,
            search_line_capacitance: 1e-15,
            senseamp_energy: 2e-15,
            driver_resistance: 5e3,
            refresh_period: 10e-6,
        }
    }
}

impl EnergyModel {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("energy.piezo_capacitance", self.piezo_capacitance),
            (
                "energy.search_line_capacitance",
                self.search_line_capacitance,
            ),
            ("energy.driver_resistance", self.driver_resistance),
            ("energy.refresh_period", self.refresh_period),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(name, "must be positive"));
            }
        }
        if !(self.senseamp_energy >= 0.0) {
            return Err(invalid("energy.senseamp_energy", "must be non-negative"));
        }
        Ok(())
    }

    /// One search line spans every column of the array.
    pub fn line_capacitance(&self, columns: usize) -> f64 {
        columns as f64 * (self.piezo_capacitance + self.search_line_capacitance)
    }

    /// Energy to restore every stored gate voltage once.
    pub fn refresh_energy(&self, array: &TcamArray) -> f64 {
        let enc = array.encoding();
        array
            .columns()
            .iter()
            .flatten()
            .map(|t| switching_energy(self.piezo_capacitance, stored_gate_voltage(*t, enc)))
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchEnergy {
    /// Search-line charging, J.
    pub lines: f64,
    /// Sense amplifiers, J.
    pub sense: f64,
}

impl SearchEnergy {
    pub fn total(&self) -> f64 {
        self.lines + self.sense
    }
}

/// Single-ended accounting: each search line costs `C dV^2` for the step
/// from its previous level; unchanged lines cost nothing.
pub fn search_energy(
    array: &TcamArray,
    word: &[TernarySymbol],
    previous: &[TernarySymbol],
    model: &EnergyModel,
) -> Result<SearchEnergy> {
    let n = array.word_length();
    for w in [word, previous] {
        if w.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: w.len(),
            });
        }
    }
    let enc = array.encoding();
    let c_line = model.line_capacitance(array.columns().len());
    let lines = word
        .iter()
        .zip(previous)
        .map(|(s, p)| switching_energy(c_line, encode_search(*s, enc) - encode_search(*p, enc)))
        .sum();
    let blocks = n.div_ceil(array.block_size());
    let sense = model.senseamp_energy * (blocks * array.columns().len()) as f64;
    Ok(SearchEnergy { lines, sense })
}
