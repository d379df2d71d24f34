//! Batch front end: one JSON configuration, five commands.
//!
//! Exit codes: 0 success, 1 invalid input, 2 failure during a run,
//! 3 an assertion requested on the command line did not hold.

mod commands;
mod config;

pub use commands::{
    cmd_edp, cmd_montecarlo, cmd_scaling, cmd_search, cmd_transfer, parse_words, random_word,
    read_words, scaling_summary, table_for, EdpArgs, MonteCarloArgs, Outcome, ScalingArgs,
    ScalingSummary, SearchArgs, TransferArgs,
};
pub use config::{
    exit_code, ArraySettings, EdpSettings, EncodingOverrides, MonteCarloSettings, RunConfig,
    ScalingSettings, TableSettings, TransferSettings, OUTPUT_DIR_ENV,
};

pub const EXIT_ASSERTION: i32 = 3;
