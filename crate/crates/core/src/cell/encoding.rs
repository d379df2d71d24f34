use serde::{Deserialize, Serialize};

use super::TernarySymbol;
use crate::device::{
    characterize_valley, DeviceCalibration, ResistanceTable, TransferCurve, ValleyShape,
};
use crate::error::{invalid, Error, Result};

/// One voltage per ternary symbol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolLevels {
    #[serde(rename = "0")]
    pub zero: f64,
    #[serde(rename = "1")]
    pub one: f64,
    #[serde(rename = "X")]
    pub dont_care: f64,
}

impl SymbolLevels {
    pub fn get(&self, s: TernarySymbol) -> f64 {
        match s {
            TernarySymbol::Zero => self.zero,
            TernarySymbol::One => self.one,
            TernarySymbol::DontCare => self.dont_care,
        }
    }
}

/// Search-line levels and stored valley positions.
///
/// A stored symbol puts the valley (resistance peak) on the search level
/// of the opposite bit, so only the two true mismatches sit on a peak. A
/// stored `X` parks the valley above every search level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EncodingScheme {
    pub search_volts: SymbolLevels,
    pub stored_valley_targets: SymbolLevels,
    /// Offset of the match relation `V3 = V2 + V_F`, V.
    pub v_f: f64,
}

impl EncodingScheme {
    pub const DEFAULT_SEARCH: SymbolLevels = SymbolLevels {
        dont_care: 0.0,
        zero: 0.2,
        one: 0.4,
    };
    pub const DEFAULT_TARGETS: SymbolLevels = SymbolLevels {
        one: 0.2,
        zero: 0.4,
        dont_care: 0.6,
    };

    pub fn standard(v_f: f64) -> Self {
        Self {
            search_volts: Self::DEFAULT_SEARCH,
            stored_valley_targets: Self::DEFAULT_TARGETS,
            v_f,
        }
    }

    pub fn from_calibration(cal: &DeviceCalibration) -> Self {
        Self::standard(cal.v_f)
    }

    pub fn validate(&self) -> Result<()> {
        let s = &self.search_volts;
        if !(s.dont_care < s.zero && s.zero < s.one) {
            return Err(invalid("encoding.search_volts", "need X < 0 < 1"));
        }
        let t = &self.stored_valley_targets;
        if !(t.one < t.zero && t.zero < t.dont_care) {
            return Err(invalid("encoding.stored_valley_targets", "need 1 < 0 < X"));
        }
        if !self.v_f.is_finite() {
            return Err(invalid("encoding.v_f", "must be finite"));
        }
        Ok(())
    }

    /// Levels must lie inside the table and be at least two grid steps
    /// apart so interpolation cannot blur them together.
    pub fn validate_against(&self, table: &ResistanceTable) -> Result<()> {
        self.validate()?;
        let check = |name: &str, grid: &[f64], levels: [f64; 3]| -> Result<()> {
            let step = grid.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
            for v in levels {
                if v < grid[0] - 1e-12 || v > grid[grid.len() - 1] + 1e-12 {
                    return Err(invalid(name, format!("level {v} V outside the table")));
                }
            }
            let mut sorted = levels;
            sorted.sort_by(f64::total_cmp);
            if sorted.windows(2).any(|w| w[1] - w[0] < 2.0 * step - 1e-12) {
                return Err(invalid(name, "levels closer than two grid steps"));
            }
            Ok(())
        };
        let s = self.search_volts;
        check(
            "encoding.search_volts",
            table.v2_grid(),
            [s.zero, s.one, s.dont_care],
        )?;
        let g = TernarySymbol::ALL.map(|t| stored_gate_voltage(t, self));
        check("encoding.stored_valley_targets", table.v3_grid(), g)
    }
}

pub fn encode_search(s: TernarySymbol, enc: &EncodingScheme) -> f64 {
    enc.search_volts.get(s)
}

/// Gate voltage that centers the valley on the stored symbol's target.
pub fn stored_gate_voltage(t: TernarySymbol, enc: &EncodingScheme) -> f64 {
    enc.stored_valley_targets.get(t) + enc.v_f
}

pub fn cell_resistance(
    stored: TernarySymbol,
    search: TernarySymbol,
    table: &ResistanceTable,
    enc: &EncodingScheme,
) -> Result<f64> {
    table.lookup(encode_search(search, enc), stored_gate_voltage(stored, enc))
}

/// Ternary match semantics: only `0` against `1` (either way) mismatches.
pub fn match_oracle(stored: TernarySymbol, search: TernarySymbol) -> bool {
    use TernarySymbol::*;
    !matches!((stored, search), (Zero, One) | (One, Zero))
}

/// All nine `(stored, search, R)` combinations.
pub fn pair_resistances(
    table: &ResistanceTable,
    enc: &EncodingScheme,
) -> Result<Vec<(TernarySymbol, TernarySymbol, f64)>> {
    let mut out = Vec::with_capacity(9);
    for t in TernarySymbol::ALL {
        for s in TernarySymbol::ALL {
            out.push((t, s, cell_resistance(t, s, table, enc)?));
        }
    }
    Ok(out)
}

/// Single-cell classifier used to check that the physics reproduces the
/// truth table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellThreshold {
    /// Highest resistance among matching pairs, Ohm.
    pub r_match_worst: f64,
    /// Lowest resistance among mismatching pairs, Ohm.
    pub r_mismatch_min: f64,
    /// Geometric mean of the two, Ohm.
    pub threshold: f64,
}

impl CellThreshold {
    pub fn measure(table: &ResistanceTable, enc: &EncodingScheme) -> Result<Self> {
        let pairs = pair_resistances(table, enc)?;
        let worst = pairs
            .iter()
            .filter(|p| match_oracle(p.0, p.1))
            .map(|p| p.2)
            .fold(f64::NEG_INFINITY, f64::max);
        let mismatch = pairs
            .iter()
            .filter(|p| !match_oracle(p.0, p.1))
            .map(|p| p.2)
            .fold(f64::INFINITY, f64::min);
        if !(mismatch > worst) {
            return Err(Error::DeviceUnusable {
                delta_r: mismatch - worst,
                margin: 0.0,
            });
        }
        Ok(Self {
            r_match_worst: worst,
            r_mismatch_min: mismatch,
            threshold: (worst * mismatch).sqrt(),
        })
    }

    pub fn is_match(&self, r: f64) -> bool {
        r < self.threshold
    }
}

/// Accepts a device only if its valley is narrow: half a search step away
/// from the center the resistance must already be below half the peak
/// excursion.
pub fn check_narrow_valley(curve: &TransferCurve) -> Result<ValleyShape> {
    let shape = characterize_valley(curve)?;
    let base = curve
        .samples
        .iter()
        .map(|s| s.r)
        .fold(f64::INFINITY, f64::min);
    let half = base + 0.5 * (shape.r_peak - base);
    let near = [shape.center_v2 - 0.2, shape.center_v2 + 0.2]
        .into_iter()
        .filter(|v| *v >= curve.samples[0].v2 && *v <= curve.samples[curve.samples.len() - 1].v2)
        .map(|v| curve.resistance_at(v))
        .fold(f64::NEG_INFINITY, f64::max);
    if near > half {
        return Err(Error::InvalidConfiguration(format!(
            "valley too wide: R({:.3} V offset) = {near:.1} ohm exceeds the half level {half:.1} ohm",
            0.2
        )));
    }
    Ok(shape)
}
