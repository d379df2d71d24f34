use thiserror::Error;

/// Errors raised anywhere in the simulation pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: String, reason: String },

    #[error(
        "numerical blow-up at t = {time:e} s: m = {m:?}, H_eff = {field:?} A/m, \
         stress = ({sigma_major:e}, {sigma_minor:e}) Pa"
    )]
    NumericalBlowup {
        time: f64,
        m: [f64; 3],
        field: [f64; 3],
        sigma_major: f64,
        sigma_minor: f64,
    },

    #[error("no steady state at (V2 = {v2} V, V3 = {v3} V) within {max_time:e} s")]
    NotConverged { v2: f64, v3: f64, max_time: f64 },

    #[error("voltage {voltage} V exceeds the breakdown limit of {limit} V")]
    VoltageOutOfRange { voltage: f64, limit: f64 },

    #[error("stress {stress:e} Pa exceeds the material limit of {limit:e} Pa")]
    StressOutOfRange { stress: f64, limit: f64 },

    #[error("transfer curve has no interior resistance maximum")]
    NoValley,

    #[error("calibration failed: {0}")]
    Calibration(String),

    #[error("lookup at (V2 = {v2} V, V3 = {v3} V) lies outside the resistance table")]
    OutOfTable { v2: f64, v3: f64 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("reserved decoder code (1, 1) at position {0}")]
    ReservedCode(usize),

    #[error("invalid ternary symbol {symbol:?} at position {position}")]
    ParseSymbol { symbol: char, position: usize },

    #[error(
        "device unusable: single-cell margin {delta_r} ohm does not exceed required {margin} ohm"
    )]
    DeviceUnusable { delta_r: f64, margin: f64 },

    #[error("no feasible reference for n = {n}: delta R = {delta_r} ohm")]
    InfeasibleReference { n: usize, delta_r: f64 },

    #[error("refresh MTJs cannot be programmed: {0}")]
    Unprogrammable(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        field: field.into(),
        reason: reason.into(),
    }
}
