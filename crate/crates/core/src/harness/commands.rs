use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;
use sha2::{Digest, Sha256};

use super::RunConfig;
use crate::analysis::{drive_settle_time, edp_sweep, monte_carlo_rotation};
use crate::array::{
    delta_r, max_column_length, scaling_curve, ColumnStats, TcamArray, SCALING_HEADER,
};
use crate::cell::{parse_word, stored_gate_voltage, EncodingScheme, TernarySymbol, Word};
use crate::device::{
    anchored_grid, build_resistance_table, calibrate_offset, characterize_valley, transfer_curve,
    uniform_grid, Device, DeviceCalibration, ResistanceTable, ENCODING_RANGE,
};
use crate::error::{Error, Result};
use crate::export::write_csv;

/// What a command wrote and whether an assertion it was asked to check
/// failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub lines: Vec<String>,
    pub assertion_failed: bool,
}

impl Outcome {
    fn new() -> Self {
        Self {
            files: Vec::new(),
            lines: Vec::new(),
            assertion_failed: false,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct TransferArgs {
    pub v1: Option<f64>,
    pub v3: Vec<f64>,
    pub temperature: Option<f64>,
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Default)]
pub struct SearchArgs {
    pub words: Option<PathBuf>,
    pub search: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct MonteCarloArgs {
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub temperature: Option<f64>,
    pub assert_chirality: bool,
}

#[derive(Debug, Clone, Default)]
pub struct ScalingArgs {
    pub n_max: Option<usize>,
}

#[derive(Debug, Clone, Default)]
pub struct EdpArgs {
    pub f_min: Option<f64>,
    pub f_max: Option<f64>,
    pub points: Option<usize>,
}

struct Run<'a> {
    cfg: &'a RunConfig,
    dir: PathBuf,
    out: Outcome,
}

impl<'a> Run<'a> {
    fn start(cfg: &'a RunConfig, dir: &Path) -> Result<Self> {
        cfg.validate()?;
        fs::create_dir_all(dir)?;
        Ok(Self {
            cfg,
            dir: dir.to_path_buf(),
            out: Outcome::new(),
        })
    }

    fn create(&mut self, name: &str) -> Result<BufWriter<File>> {
        let path = self.dir.join(name);
        let f = File::create(&path)?;
        self.out.files.push(path);
        Ok(BufWriter::new(f))
    }

    fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_vec_pretty(value)?;
        text.push(b'\n');
        let path = self.dir.join(name);
        fs::write(&path, text)?;
        self.out.files.push(path);
        Ok(())
    }

    fn say(&mut self, line: String) {
        self.out.lines.push(line);
    }

    fn device(&self) -> Result<Device> {
        Device::new(self.cfg.device)
    }

    fn calibration(&self, device: &Device) -> Result<Option<DeviceCalibration>> {
        if self.cfg.encoding.v_f.is_some() {
            return Ok(None);
        }
        let opts = self.cfg.sim.at_temperature(0.0);
        calibrate_offset(device, &opts).map(Some)
    }

    fn encoding(&self, cal: Option<&DeviceCalibration>) -> EncodingScheme {
        self.cfg.encoding.apply(cal.map_or(0.0, |c| c.v_f))
    }

    fn table(&self, device: &Device, enc: &EncodingScheme) -> Result<Arc<ResistanceTable>> {
        table_for(self.cfg, device, enc).map(Arc::new)
    }
}

#[derive(Serialize, Deserialize)]
struct CachedTable {
    key: String,
    table: ResistanceTable,
}

/// Table aligned so every encoding level falls on a node.
pub fn table_for(
    cfg: &RunConfig,
    device: &Device,
    enc: &EncodingScheme,
) -> Result<ResistanceTable> {
    let t = &cfg.table;
    let anchor = stored_gate_voltage(TernarySymbol::One, enc);
    let key = {
        let bytes = serde_json::to_vec(&json!({
            "device": cfg.device, "sim": cfg.sim, "step": t.step, "v1": t.v1, "anchor": anchor,
        }))?;
        hex::encode(Sha256::digest(bytes))
    };
    if let Some(path) = &t.cache {
        if let Ok(text) = fs::read_to_string(path) {
            if let Ok(c) = serde_json::from_str::<CachedTable>(&text) {
                if c.key == key {
                    return Ok(c.table);
                }
            }
        }
    }
    let (lo, hi) = ENCODING_RANGE;
    let g2 = uniform_grid(lo, hi, t.step);
    let g3 = anchored_grid(lo, hi, t.step, anchor);
    let table = build_resistance_table(device, t.v1, &g2, &g3, &cfg.sim)?;
    if let Some(path) = &t.cache {
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        let c = CachedTable { key, table };
        fs::write(path, serde_json::to_vec(&c)?)?;
        return Ok(c.table);
    }
    Ok(table)
}

/// Word file: one word per line; `#` starts a comment.
pub fn read_words(path: &Path) -> Result<Vec<Word>> {
    let text = fs::read_to_string(path)?;
    parse_words(&text)
        .map_err(|(line, e)| Error::InvalidConfiguration(format!("{}:{line}: {e}", path.display())))
}

pub fn parse_words(text: &str) -> std::result::Result<Vec<Word>, (usize, Error)> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        out.push(parse_word(body).map_err(|e| (k + 1, e))?);
    }
    Ok(out)
}

pub fn random_word<R: Rng>(rng: &mut R, n: usize) -> Word {
    (0..n)
        .map(|_| TernarySymbol::ALL[rng.random_range(0..3)])
        .collect()
}

fn mt(b: f64) -> String {
    format!("{:.2}mT", b * 1e3)
}

pub fn cmd_transfer(cfg: &RunConfig, dir: &Path, args: &TransferArgs) -> Result<Outcome> {
    let mut run = Run::start(cfg, dir)?;
    let t = &cfg.transfer;
    let v1 = args.v1.unwrap_or(t.v1);
    let levels = if args.v3.is_empty() {
        t.v3_levels.clone()
    } else {
        args.v3.clone()
    };
    let points = args.points.unwrap_or(t.points);
    let opts = cfg
        .sim
        .at_temperature(args.temperature.unwrap_or(cfg.sim.temperature));
    let dipoles = if t.dipole_fields.is_empty() {
        vec![cfg.device.dipole_field]
    } else {
        t.dipole_fields.clone()
    };
    let mut summary = Vec::new();
    for &b in &dipoles {
        let device = Device::new(crate::device::DeviceConfig {
            dipole_field: b,
            ..cfg.device
        })?;
        for &v3 in &levels {
            let curve = transfer_curve(&device, v1, t.v2_range, points, v3, &opts, t.repeats)?;
            let stem = format!("b{}_v3_{:+.3}V", mt(b), v3);
            curve.write_csv(run.create(&format!("transfer_{stem}.csv"))?)?;
            let valley = match characterize_valley(&curve) {
                Ok(v) => json!(v),
                Err(Error::NoValley) => json!(null),
                Err(e) => return Err(e),
            };
            run.json(&format!("valley_{stem}.json"), &valley)?;
            let center = valley.get("center_v2").cloned().unwrap_or(json!(null));
            run.say(format!(
                "B = {}, V3 = {v3:+.3} V: valley center {center} V",
                mt(b)
            ));
            summary.push(json!({ "dipole_field": b, "v3": v3, "valley": valley }));
        }
    }
    run.json(
        "transfer_summary.json",
        &json!({
            "command": "transfer", "config_hash": cfg.hash(), "seed": opts.rng_seed,
            "v1": v1, "temperature": opts.temperature, "curves": summary,
        }),
    )?;
    Ok(run.out)
}

pub fn cmd_search(cfg: &RunConfig, dir: &Path, args: &SearchArgs) -> Result<Outcome> {
    let mut run = Run::start(cfg, dir)?;
    let words_path = args
        .words
        .clone()
        .or_else(|| cfg.array.words_file.clone())
        .ok_or_else(|| Error::InvalidConfiguration("no stored-word file given".into()))?;
    let words = read_words(&words_path)?;
    if args.search.is_empty() {
        return Err(Error::InvalidConfiguration("no search word given".into()));
    }
    let searches = args
        .search
        .iter()
        .map(|s| parse_word(s))
        .collect::<Result<Vec<_>>>()?;
    let device = run.device()?;
    let cal = run.calibration(&device)?;
    let enc = run.encoding(cal.as_ref());
    let table = run.table(&device, &enc)?;
    let array = TcamArray::new(words, cfg.array.block_size, enc, table, cfg.array.senseamp)?;
    let mut results = Vec::new();
    for (k, s) in searches.iter().enumerate() {
        let r = array.search(s)?;
        let name = if searches.len() == 1 {
            "transcript.csv".to_string()
        } else {
            format!("transcript_{k}.csv")
        };
        r.write_transcript(run.create(&name)?)?;
        for c in &r.columns {
            run.say(format!(
                "search {k} column {}: {}",
                c.column,
                if c.verdict.is_match() {
                    "MATCH"
                } else {
                    "MISMATCH"
                }
            ));
        }
        results.push(json!({ "search": r.search, "matches": r.matches() }));
    }
    run.json(
        "search_summary.json",
        &json!({
            "command": "search", "config_hash": cfg.hash(), "v_f": enc.v_f,
            "block_size": array.block_size(), "max_column_length": array.max_column_length(),
            "stats": array.stats(), "results": results,
        }),
    )?;
    Ok(run.out)
}

pub fn cmd_montecarlo(cfg: &RunConfig, dir: &Path, args: &MonteCarloArgs) -> Result<Outcome> {
    let mut run = Run::start(cfg, dir)?;
    let m = &cfg.montecarlo;
    let trials = args.trials.unwrap_or(m.trials);
    let seed = args.seed.unwrap_or(m.seed);
    let opts = cfg
        .sim
        .at_temperature(args.temperature.unwrap_or(m.temperature));
    let device = run.device()?;
    let drive = match m.drive {
        Some(d) => d,
        None => {
            let cal = run.calibration(&device)?;
            (-run.encoding(cal.as_ref()).v_f, 0.0)
        }
    };
    let report = monte_carlo_rotation(&device, drive, &opts, trials, seed)?;
    run.say(format!(
        "{} trials at {} K: {} clockwise, {} anticlockwise, {} unresolved",
        report.trials,
        report.temperature,
        report.clockwise,
        report.anticlockwise,
        report.unresolved
    ));
    if args.assert_chirality && report.anticlockwise > 0 {
        run.out.assertion_failed = true;
        run.say("chirality assertion failed".into());
    }
    run.json(
        "montecarlo.json",
        &json!({ "command": "montecarlo", "config_hash": cfg.hash(), "report": report }),
    )?;
    Ok(run.out)
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingSummary {
    pub stats: ColumnStats,
    /// First `n` with `delta_R <= 0`.
    pub crossover: Option<usize>,
    pub max_column_length: usize,
    pub margin: f64,
}

pub fn scaling_summary(stats: &ColumnStats, n_max: usize, margin: f64) -> Result<ScalingSummary> {
    let mut crossover = None;
    for n in 1..=n_max {
        if delta_r(n, stats)? <= 0.0 {
            crossover = Some(n);
            break;
        }
    }
    Ok(ScalingSummary {
        stats: *stats,
        crossover,
        max_column_length: max_column_length(stats, margin)?,
        margin,
    })
}

pub fn cmd_scaling(cfg: &RunConfig, dir: &Path, args: &ScalingArgs) -> Result<Outcome> {
    let mut run = Run::start(cfg, dir)?;
    let n_max = args.n_max.unwrap_or(cfg.scaling.n_max);
    if n_max == 0 {
        return Err(crate::error::invalid("n_max", "must be at least 1"));
    }
    let device = run.device()?;
    let cal = run.calibration(&device)?;
    let enc = run.encoding(cal.as_ref());
    let table = run.table(&device, &enc)?;
    let stats = crate::array::column_stats(&table, &enc)?;
    let curve = scaling_curve(&stats, n_max)?;
    write_csv(run.create("scaling.csv")?, &SCALING_HEADER, &curve)?;
    let summary = scaling_summary(&stats, n_max, cfg.scaling.margin)?;
    match summary.crossover {
        Some(n) => run.say(format!("delta R first <= 0 at n = {n}")),
        None => run.say(format!("delta R stays positive up to n = {n_max}")),
    }
    run.json(
        "scaling_summary.json",
        &json!({ "command": "scaling", "config_hash": cfg.hash(), "v_f": enc.v_f, "summary": summary }),
    )?;
    Ok(run.out)
}

pub fn cmd_edp(cfg: &RunConfig, dir: &Path, args: &EdpArgs) -> Result<Outcome> {
    let mut run = Run::start(cfg, dir)?;
    let e = &cfg.edp;
    let range = (args.f_min.unwrap_or(e.f_min), args.f_max.unwrap_or(e.f_max));
    let points = args.points.unwrap_or(e.points);
    let device = run.device()?;
    let cal = run.calibration(&device)?;
    let enc = run.encoding(cal.as_ref());
    let table = run.table(&device, &enc)?;
    let mut rng = ChaCha8Rng::seed_from_u64(e.seed);
    let words = match &cfg.array.words_file {
        Some(p) => read_words(p)?,
        None => (0..e.columns)
            .map(|_| random_word(&mut rng, e.word_length))
            .collect(),
    };
    let n = words.first().map_or(0, Vec::len);
    let workload: Vec<Word> = (0..e.workload).map(|_| random_word(&mut rng, n)).collect();
    let array = TcamArray::new(words, cfg.array.block_size, enc, table, cfg.array.senseamp)?;
    let settle = drive_settle_time(&device, &enc, &cfg.sim)?;
    let curve = edp_sweep(
        &array,
        &cfg.energy,
        &workload,
        settle,
        cfg.array.senseamp.settle_delay,
        range,
        points,
    )?;
    curve.write_csv(run.create("edp.csv")?)?;
    let best = *curve.minimum();
    run.say(format!(
        "minimum EDP {:.4e} J s at {:.4e} Hz (settle bound {:.3e} s)",
        best.edp, best.frequency, settle
    ));
    run.json(
        "edp_summary.json",
        &json!({
            "command": "edp", "config_hash": cfg.hash(), "seed": e.seed, "settle_time": settle,
            "minimum": best, "interior_minimum": curve.has_interior_minimum(),
        }),
    )?;
    Ok(run.out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_file_comments_and_errors() {
        let w = parse_words("# header\n01X\n\n1X0 # trailing\n").unwrap();
        assert_eq!(w.len(), 2);
        let (line, e) = parse_words("01\n0Q\n").unwrap_err();
        assert_eq!(line, 2);
        assert!(matches!(
            e,
            Error::ParseSymbol {
                symbol: 'Q',
                position: 1
            }
        ));
    }
}
