use serde::{Deserialize, Serialize};

use super::ReferenceConfig;
use crate::cell::{encode_search, EncodingScheme, TernarySymbol};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Match,
    Mismatch,
}

impl Verdict {
    pub fn is_match(self) -> bool {
        self == Verdict::Match
    }

    pub fn and(self, other: Verdict) -> Verdict {
        if self.is_match() && other.is_match() {
            Verdict::Match
        } else {
            Verdict::Mismatch
        }
    }
}

/// Behavioral comparator. Ties resolve to `Mismatch`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SenseAmpConfig {
    /// Comparator inaccuracy, Ohm.
    pub offset: f64,
    /// Sense latency, s.
    pub settle_delay: f64,
}

impl Default for SenseAmpConfig {
    fn default() -> Self {
        Self {
            offset: 0.0,
            settle_delay: 100e-12,
        }
    }
}

impl SenseAmpConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.offset >= 0.0) {
            return Err(invalid("senseamp.offset", "must be non-negative"));
        }
        if !(self.settle_delay >= 0.0) {
            return Err(invalid("senseamp.settle_delay", "must be non-negative"));
        }
        Ok(())
    }
}

pub fn sense(r_col: f64, reference: &ReferenceConfig, cfg: &SenseAmpConfig) -> Verdict {
    if r_col < reference.r_ref - cfg.offset {
        Verdict::Match
    } else {
        Verdict::Mismatch
    }
}

/// Search-bit decoder: `(B0, B1)` to symbol. `(1, 1)` is reserved.
pub fn decode_bits(b0: bool, b1: bool) -> Option<TernarySymbol> {
    match (b0, b1) {
        (false, false) => Some(TernarySymbol::DontCare),
        (false, true) => Some(TernarySymbol::Zero),
        (true, false) => Some(TernarySymbol::One),
        (true, true) => None,
    }
}

pub fn encode_bits(s: TernarySymbol) -> (bool, bool) {
    match s {
        TernarySymbol::DontCare => (false, false),
        TernarySymbol::Zero => (false, true),
        TernarySymbol::One => (true, false),
    }
}

pub fn decode_search_symbols(bit_pairs: &[(bool, bool)]) -> Result<Vec<TernarySymbol>> {
    bit_pairs
        .iter()
        .enumerate()
        .map(|(i, &(b0, b1))| decode_bits(b0, b1).ok_or(Error::ReservedCode(i)))
        .collect()
}

/// Decoded search-line voltages, V.
pub fn decode_search_word(bit_pairs: &[(bool, bool)], enc: &EncodingScheme) -> Result<Vec<f64>> {
    Ok(decode_search_symbols(bit_pairs)?
        .into_iter()
        .map(|s| encode_search(s, enc))
        .collect())
}
