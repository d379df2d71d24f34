use std::fmt;

use serde::{Deserialize, Serialize};

use super::{stored_gate_voltage, EncodingScheme, TernarySymbol};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MtjState {
    #[serde(rename = "R_L")]
    Low,
    #[serde(rename = "R_H")]
    High,
}

impl fmt::Display for MtjState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MtjState::Low => "R_L",
            MtjState::High => "R_H",
        })
    }
}

/// Refresh MTJ pair `(mtj1, mtj2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MtjPair {
    pub mtj1: MtjState,
    pub mtj2: MtjState,
}

impl MtjPair {
    pub const fn new(mtj1: MtjState, mtj2: MtjState) -> Self {
        Self { mtj1, mtj2 }
    }

    pub fn for_symbol(t: TernarySymbol) -> Self {
        use MtjState::*;
        match t {
            TernarySymbol::One => Self::new(High, High),
            TernarySymbol::Zero => Self::new(High, Low),
            TernarySymbol::DontCare => Self::new(Low, Low),
        }
    }

    /// `None` for `(R_L, R_H)`, which the protocol never writes.
    pub fn symbol(&self) -> Option<TernarySymbol> {
        TernarySymbol::ALL
            .into_iter()
            .find(|t| Self::for_symbol(*t) == *self)
    }

    pub fn series_resistance(&self, p: &RefreshMtjParams) -> f64 {
        p.resistance(self.mtj1) + p.resistance(self.mtj2)
    }
}

impl fmt::Display for MtjPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.mtj1, self.mtj2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RefreshMtjParams {
    pub r_h: f64,
    pub r_l: f64,
    /// Critical switching currents, A. MTJ-2 is the harder one.
    pub i_c1: f64,
    pub i_c2: f64,
    /// Switching times at the programming current, s.
    pub t_sw1: f64,
    pub t_sw2: f64,
}

impl Default for RefreshMtjParams {
    fn default() -> Self {
        Self {
            r_h: 4e3,
            r_l: 2e3,
            i_c1: 150e-6,
            i_c2: 180e-6,
            t_sw1: 2e-9,
            t_sw2: 4e-9,
        }
    }
}

impl RefreshMtjParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.r_l > 0.0 && self.r_h > self.r_l) {
            return Err(invalid("refresh.r_h", "need R_H > R_L > 0"));
        }
        if !(self.i_c1 > 0.0 && self.i_c2 > self.i_c1) {
            return Err(invalid("refresh.i_c2", "need I_C2 > I_C1 > 0"));
        }
        if !(self.t_sw1 > 0.0) {
            return Err(invalid("refresh.t_sw1", "must be positive"));
        }
        if self.t_sw1 >= self.t_sw2 {
            return Err(Error::Unprogrammable(format!(
                "t_sw1 = {:e} s is not shorter than t_sw2 = {:e} s, so no pulse flips MTJ-1 alone",
                self.t_sw1, self.t_sw2
            )));
        }
        Ok(())
    }

    pub fn resistance(&self, s: MtjState) -> f64 {
        match s {
            MtjState::Low => self.r_l,
            MtjState::High => self.r_h,
        }
    }

    /// Programming current: comfortably above both critical currents.
    pub fn write_current(&self) -> f64 {
        1.2 * self.i_c2
    }
}

/// Write pulse. Positive current drives an MTJ to `R_L`, negative to `R_H`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pulse {
    pub current: f64,
    pub width: f64,
}

impl Pulse {
    fn drives(&self, i_c: f64, t_sw: f64) -> Option<MtjState> {
        if self.current.abs() >= i_c && self.width >= t_sw {
            Some(if self.current > 0.0 {
                MtjState::Low
            } else {
                MtjState::High
            })
        } else {
            None
        }
    }

    pub fn apply(&self, pair: MtjPair, p: &RefreshMtjParams) -> MtjPair {
        MtjPair {
            mtj1: self.drives(p.i_c1, p.t_sw1).unwrap_or(pair.mtj1),
            mtj2: self.drives(p.i_c2, p.t_sw2).unwrap_or(pair.mtj2),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProgramStep {
    pub pulse: Pulse,
    pub after: MtjPair,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Programming {
    pub target: TernarySymbol,
    pub state: MtjPair,
    pub trace: Vec<ProgramStep>,
}

/// Writes the refresh pair for `target`, starting from whatever `initial`
/// holds.
///
/// `1` and `X` take one long pulse that switches both junctions. `0` sets
/// both to `R_L` first, then a reverse pulse longer than `t_sw1` but
/// shorter than `t_sw2` flips MTJ-1 only.
pub fn program_from(
    initial: MtjPair,
    target: TernarySymbol,
    params: &RefreshMtjParams,
) -> Result<Programming> {
    params.validate()?;
    let i = params.write_current();
    let long = 1.5 * params.t_sw2;
    let pulses = match target {
        TernarySymbol::One => vec![Pulse {
            current: -i,
            width: long,
        }],
        TernarySymbol::DontCare => vec![Pulse {
            current: i,
            width: long,
        }],
        TernarySymbol::Zero => vec![
            Pulse {
                current: i,
                width: long,
            },
            Pulse {
                current: -i,
                width: 0.5 * (params.t_sw1 + params.t_sw2),
            },
        ],
    };
    let mut state = initial;
    let mut trace = Vec::with_capacity(pulses.len());
    for pulse in pulses {
        state = pulse.apply(state, params);
        trace.push(ProgramStep {
            pulse,
            after: state,
        });
    }
    Ok(Programming {
        target,
        state,
        trace,
    })
}

/// Programs from the as-fabricated `(R_H, R_H)` state.
pub fn program_local_cell(target: TernarySymbol, params: &RefreshMtjParams) -> Result<Programming> {
    program_from(MtjPair::new(MtjState::High, MtjState::High), target, params)
}

/// Current-biased refresh stack.
///
/// A constant read current `I` flows from `V_DD` through a series trim `r`
/// and the two refresh MTJs; the V3 node sits at the top of the trim, so
/// `V3 = V_DD - I (r + R1 + R2)`. One resistance step `R_H - R_L` moves V3
/// by one encoding step, so both unknowns follow from the `X` and `1` levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefreshBias {
    pub v_dd: f64,
    pub bias_current: f64,
    pub series_trim: f64,
}

impl RefreshBias {
    pub fn solve(params: &RefreshMtjParams, enc: &EncodingScheme, v_dd: f64) -> Result<Self> {
        params.validate()?;
        enc.validate()?;
        let v_x = stored_gate_voltage(TernarySymbol::DontCare, enc);
        let v_1 = stored_gate_voltage(TernarySymbol::One, enc);
        let i = (v_x - v_1) / (2.0 * (params.r_h - params.r_l));
        let r = (v_dd - v_x) / i - 2.0 * params.r_l;
        if r < 0.0 {
            return Err(invalid(
                "refresh.v_dd",
                format!("{v_dd} V is too low to reach the X level {v_x:.3} V"),
            ));
        }
        if i >= params.i_c1 {
            return Err(invalid(
                "refresh",
                format!(
                    "bias current {i:e} A would disturb MTJ-1 (I_C1 = {:e} A)",
                    params.i_c1
                ),
            ));
        }
        Ok(Self {
            v_dd,
            bias_current: i,
            series_trim: r,
        })
    }

    pub fn level(&self, pair: MtjPair, params: &RefreshMtjParams) -> f64 {
        self.v_dd - self.bias_current * (self.series_trim + pair.series_resistance(params))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalRefreshCellState {
    pub pair: MtjPair,
    pub params: RefreshMtjParams,
    pub bias: RefreshBias,
}

impl LocalRefreshCellState {
    pub fn program(
        target: TernarySymbol,
        params: RefreshMtjParams,
        bias: RefreshBias,
    ) -> Result<Self> {
        let prog = program_local_cell(target, &params)?;
        Ok(Self {
            pair: prog.state,
            params,
            bias,
        })
    }
}

pub fn refresh_voltage(state: &LocalRefreshCellState) -> f64 {
    state.bias.level(state.pair, &state.params)
}
