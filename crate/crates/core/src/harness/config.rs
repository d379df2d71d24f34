use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analysis::EnergyModel;
use crate::array::{SenseAmpConfig, DEFAULT_BLOCK_SIZE};
use crate::cell::{EncodingScheme, RefreshMtjParams, StorageNode, SymbolLevels};
use crate::device::{
    DeviceConfig, DEFAULT_REPEATS, DEFAULT_V1, ENCODING_RANGE, MAX_GRID_STEP, MIN_POINTS,
};
use crate::error::{invalid, Error, Result};
use crate::magnetodynamics::SimOptions;

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "SMTJSIM_OUTPUT_DIR";

/// Optional replacements for the calibrated encoding.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EncodingOverrides {
    pub search_volts: Option<SymbolLevels>,
    pub stored_valley_targets: Option<SymbolLevels>,
    /// Skips calibration when set, V.
    pub v_f: Option<f64>,
}

impl EncodingOverrides {
    pub fn apply(&self, v_f: f64) -> EncodingScheme {
        let mut e = EncodingScheme::standard(self.v_f.unwrap_or(v_f));
        if let Some(s) = self.search_volts {
            e.search_volts = s;
        }
        if let Some(t) = self.stored_valley_targets {
            e.stored_valley_targets = t;
        }
        e
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TableSettings {
    /// Grid step on both axes, V.
    pub step: f64,
    /// Read bias stored with the table, V.
    pub v1: f64,
    /// Reuse a table saved here by an earlier run with the same settings.
    pub cache: Option<PathBuf>,
}

impl Default for TableSettings {
    fn default() -> Self {
        Self {
            step: 5e-3,
            v1: DEFAULT_V1,
            cache: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ArraySettings {
    pub block_size: usize,
    pub senseamp: SenseAmpConfig,
    /// Stored words, one per line.
    pub words_file: Option<PathBuf>,
    pub refresh: RefreshMtjParams,
    pub storage: StorageNode,
}

impl Default for ArraySettings {
    fn default() -> Self {
        Self {
            block_size: DEFAULT_BLOCK_SIZE,
            senseamp: SenseAmpConfig::default(),
            words_file: None,
            refresh: RefreshMtjParams::default(),
            storage: StorageNode::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TransferSettings {
    pub v1: f64,
    pub v3_levels: Vec<f64>,
    pub v2_range: (f64, f64),
    pub points: usize,
    pub repeats: usize,
    /// Extra dipole magnitudes to sweep, T. Empty uses the device value.
    pub dipole_fields: Vec<f64>,
}

impl Default for TransferSettings {
    fn default() -> Self {
        Self {
            v1: DEFAULT_V1,
            v3_levels: vec![0.0],
            v2_range: ENCODING_RANGE,
            points: 81,
            repeats: DEFAULT_REPEATS,
            dipole_fields: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MonteCarloSettings {
    pub trials: usize,
    pub seed: u64,
    pub temperature: f64,
    /// `(V2, V3)`; defaults to the calibrated valley center at `V3 = 0`.
    pub drive: Option<(f64, f64)>,
}

impl Default for MonteCarloSettings {
    fn default() -> Self {
        Self {
            trials: 1000,
            seed: 0,
            temperature: 300.0,
            drive: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScalingSettings {
    pub n_max: usize,
    /// Required sensing margin, Ohm.
    pub margin: f64,
}

impl Default for ScalingSettings {
    fn default() -> Self {
        Self {
            n_max: 64,
            margin: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EdpSettings {
    pub f_min: f64,
    pub f_max: f64,
    pub points: usize,
    /// Random search words generated for the workload.
    pub workload: usize,
    /// Size of the random array used when `array.words_file` is unset.
    pub columns: usize,
    pub word_length: usize,
    pub seed: u64,
}

impl Default for EdpSettings {
    fn default() -> Self {
        Self {
            f_min: 1e7,
            f_max: 1e10,
            points: 61,
            workload: 256,
            columns: 64,
            word_length: 144,
            seed: 0,
        }
    }
}

/// One JSON file drives every command.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub device: DeviceConfig,
    pub sim: SimOptions,
    pub encoding: EncodingOverrides,
    pub table: TableSettings,
    pub array: ArraySettings,
    pub energy: EnergyModel,
    pub transfer: TransferSettings,
    pub montecarlo: MonteCarloSettings,
    pub scaling: ScalingSettings,
    pub edp: EdpSettings,
    pub output_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        if !value.is_object() {
            return Err(Error::InvalidConfiguration(
                "top level must be a JSON object".into(),
            ));
        }
        let cfg: RunConfig = serde_path_to_error::deserialize(value).map_err(|e| {
            if e.path().iter().next().is_none() {
                Error::Json(e.into_inner())
            } else {
                invalid(e.path().to_string(), e.into_inner().to_string())
            }
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Checks every section, so no command starts on a bad file.
    pub fn validate(&self) -> Result<()> {
        self.device.validate()?;
        self.sim.validate()?;
        self.encoding.apply(0.0).validate()?;
        if !(self.table.step > 0.0 && self.table.step <= MAX_GRID_STEP) {
            return Err(invalid("table.step", "must be in (0, 25 mV]"));
        }
        if !self.table.v1.is_finite() {
            return Err(invalid("table.v1", "must be finite"));
        }
        if self.array.block_size == 0 {
            return Err(invalid("array.block_size", "must be at least 1"));
        }
        self.array.senseamp.validate()?;
        self.array.refresh.validate()?;
        self.array.storage.validate()?;
        self.energy.validate()?;
        let t = &self.transfer;
        if t.points < MIN_POINTS {
            return Err(invalid(
                "transfer.points",
                format!("need at least {MIN_POINTS}"),
            ));
        }
        if !(t.v2_range.1 > t.v2_range.0) {
            return Err(invalid("transfer.v2_range", "need lo < hi"));
        }
        if t.v3_levels.is_empty() {
            return Err(invalid("transfer.v3_levels", "need at least one level"));
        }
        if t.repeats == 0 {
            return Err(invalid("transfer.repeats", "must be at least 1"));
        }
        if t.dipole_fields.iter().any(|b| !(*b >= 0.0)) {
            return Err(invalid("transfer.dipole_fields", "must be non-negative"));
        }
        if self.montecarlo.trials == 0 {
            return Err(invalid("montecarlo.trials", "must be at least 1"));
        }
        if !(self.montecarlo.temperature >= 0.0) {
            return Err(invalid("montecarlo.temperature", "must be non-negative"));
        }
        if self.scaling.n_max == 0 {
            return Err(invalid("scaling.n_max", "must be at least 1"));
        }
        if !(self.scaling.margin >= 0.0) {
            return Err(invalid("scaling.margin", "must be non-negative"));
        }
        let e = &self.edp;
        if !(e.f_min > 0.0 && e.f_max > e.f_min) {
            return Err(invalid("edp", "need 0 < f_min < f_max"));
        }
        if e.points < 2 || e.workload == 0 {
            return Err(invalid(
                "edp",
                "need at least two points and one workload word",
            ));
        }
        if e.columns == 0 || e.word_length == 0 {
            return Err(invalid(
                "edp",
                "random array needs columns and word_length >= 1",
            ));
        }
        Ok(())
    }

    /// SHA-256 of the normalized configuration (defaults filled in).
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(bytes))
    }

    /// Explicit flag, then the config file, then the environment.
    pub fn output_dir(&self, flag: Option<&Path>) -> PathBuf {
        flag.map(Path::to_path_buf)
            .or_else(|| self.output_dir.clone())
            .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("smtjsim-out"))
    }
}

/// Maps an error onto the process exit code: 1 for bad input, 2 for
/// failures during a run.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidGeometry(_)
        | Error::InvalidParameter { .. }
        | Error::InvalidConfiguration(_)
        | Error::VoltageOutOfRange { .. }
        | Error::StressOutOfRange { .. }
        | Error::ParseSymbol { .. }
        | Error::LengthMismatch { .. }
        | Error::ReservedCode(_)
        | Error::Json(_)
        | Error::Unprogrammable(_) => 1,
        _ => 2,
    }
}
