//! Columns of parallel cells, reference sizing and block search.

mod sense;
mod stats;
mod tcam;

pub use sense::{
    decode_bits, decode_search_symbols, decode_search_word, encode_bits, sense, SenseAmpConfig,
    Verdict,
};
pub use stats::{
    column_stats, delta_r, max_column_length, reference_resistance, scaling_curve,
    worst_match_column_r, worst_one_mismatch_column_r, ColumnStats, ReferenceConfig, ScalingPoint,
    COLUMN_LENGTH_CAP, SCALING_HEADER,
};
pub use tcam::{
    column_resistance, ArrayImage, BlockResult, ColumnResult, SearchResult, TcamArray,
    DEFAULT_BLOCK_SIZE, TRANSCRIPT_HEADER,
};
