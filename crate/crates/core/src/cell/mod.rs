//! Ternary cells built on one s-MTJ.
//!
//! The search word drives the major-axis pair (V2) and the stored symbol
//! is a gate voltage on the minor-axis pair (V3). A cell mismatches when
//! the search level lands on the stored valley.

mod dynamic;
mod encoding;
mod refresh;
mod symbol;

pub use dynamic::{decay_storage, DynamicCellState, StorageNode};
pub use encoding::{
    cell_resistance, check_narrow_valley, encode_search, match_oracle, pair_resistances,
    stored_gate_voltage, CellThreshold, EncodingScheme, SymbolLevels,
};
pub use refresh::{
    program_from, program_local_cell, refresh_voltage, LocalRefreshCellState, MtjPair, MtjState,
    ProgramStep, Programming, Pulse, RefreshBias, RefreshMtjParams,
};
pub use symbol::{format_word, parse_word, TernarySymbol, Word};
