use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TernarySymbol {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "X")]
    DontCare,
}

impl TernarySymbol {
    pub const ALL: [TernarySymbol; 3] = [Self::Zero, Self::One, Self::DontCare];

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(Self::Zero),
            '1' => Some(Self::One),
            'X' | 'x' => Some(Self::DontCare),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Self::Zero => '0',
            Self::One => '1',
            Self::DontCare => 'X',
        }
    }
}

impl fmt::Display for TernarySymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A word over `{0, 1, X}`, most significant symbol first.
pub type Word = Vec<TernarySymbol>;

/// Parses a word; the error names the first offending character and its
/// zero-based position.
pub fn parse_word(text: &str) -> Result<Word> {
    text.chars()
        .enumerate()
        .map(|(position, symbol)| {
            TernarySymbol::from_char(symbol).ok_or(Error::ParseSymbol { symbol, position })
        })
        .collect()
}

pub fn format_word(word: &[TernarySymbol]) -> String {
    word.iter().map(|s| s.to_char()).collect()
}

impl FromStr for TernarySymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => TernarySymbol::from_char(c).ok_or(Error::ParseSymbol {
                symbol: c,
                position: 0,
            }),
            (Some(_), Some(c)) => Err(Error::ParseSymbol {
                symbol: c,
                position: 1,
            }),
            (None, _) => Err(Error::LengthMismatch {
                expected: 1,
                found: 0,
            }),
        }
    }
}
