use std::io::{Read, Write};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    column_stats, max_column_length, reference_resistance, sense, ColumnStats, ReferenceConfig,
    SenseAmpConfig, Verdict,
};
use crate::cell::{cell_resistance, format_word, parse_word, EncodingScheme, TernarySymbol, Word};
use crate::device::ResistanceTable;
use crate::error::{invalid, Error, Result};
use crate::export::write_csv;

pub const DEFAULT_BLOCK_SIZE: usize = 16;

/// Parallel combination of one column's cells.
pub fn column_resistance(
    column: &[TernarySymbol],
    search: &[TernarySymbol],
    table: &ResistanceTable,
    enc: &EncodingScheme,
) -> Result<f64> {
    if column.len() != search.len() {
        return Err(Error::LengthMismatch {
            expected: column.len(),
            found: search.len(),
        });
    }
    let mut g = 0.0;
    for (t, s) in column.iter().zip(search) {
        g += 1.0 / cell_resistance(*t, *s, table, enc)?;
    }
    Ok(1.0 / g)
}

fn symbol_index(s: TernarySymbol) -> usize {
    match s {
        TernarySymbol::Zero => 0,
        TernarySymbol::One => 1,
        TernarySymbol::DontCare => 2,
    }
}

/// Serializable part of an array; the resistance table is supplied on load.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrayImage {
    pub words: Vec<String>,
    #[serde(default = "default_block_size")]
    pub block_size: usize,
    pub encoding: EncodingScheme,
    #[serde(default)]
    pub senseamp: SenseAmpConfig,
}

fn default_block_size() -> usize {
    DEFAULT_BLOCK_SIZE
}

/// Stored words sharing one search bus. Each stored word is one column
/// (match line); long words are split into blocks combined by an AND-tree.
#[derive(Debug, Clone)]
pub struct TcamArray {
    columns: Vec<Word>,
    block_size: usize,
    enc: EncodingScheme,
    table: Arc<ResistanceTable>,
    senseamp: SenseAmpConfig,
    stats: ColumnStats,
    n_max: usize,
    /// Cell conductance by `[stored][search]`.
    conductance: [[f64; 3]; 3],
    /// Reference for a block of `n` cells at index `n - 1`.
    references: Vec<ReferenceConfig>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockResult {
    pub block: usize,
    pub n: usize,
    pub r_col: f64,
    pub r_ref: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnResult {
    pub column: usize,
    pub verdict: Verdict,
    pub blocks: Vec<BlockResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub search: String,
    pub columns: Vec<ColumnResult>,
}

pub const TRANSCRIPT_HEADER: [&str; 5] = ["column_id", "block_id", "R_col", "R_ref", "verdict"];

impl SearchResult {
    pub fn verdicts(&self) -> Vec<Verdict> {
        self.columns.iter().map(|c| c.verdict).collect()
    }

    /// Indices of matching columns.
    pub fn matches(&self) -> Vec<usize> {
        self.columns
            .iter()
            .filter(|c| c.verdict.is_match())
            .map(|c| c.column)
            .collect()
    }

    pub fn write_transcript<W: Write>(&self, out: W) -> Result<()> {
        let rows = self.columns.iter().flat_map(|c| {
            c.blocks.iter().map(move |b| {
                let v = if b.verdict.is_match() {
                    "match"
                } else {
                    "mismatch"
                };
                (c.column, b.block, b.r_col, b.r_ref, v)
            })
        });
        write_csv(out, &TRANSCRIPT_HEADER, rows)
    }
}

impl TcamArray {
    pub fn new(
        columns: Vec<Word>,
        block_size: usize,
        enc: EncodingScheme,
        table: Arc<ResistanceTable>,
        senseamp: SenseAmpConfig,
    ) -> Result<Self> {
        let width = columns.first().map(Vec::len).unwrap_or(0);
        if width == 0 {
            return Err(invalid("array.words", "need at least one non-empty word"));
        }
        if let Some(bad) = columns.iter().find(|c| c.len() != width) {
            return Err(Error::LengthMismatch {
                expected: width,
                found: bad.len(),
            });
        }
        if block_size == 0 {
            return Err(invalid("array.block_size", "must be at least 1"));
        }
        senseamp.validate()?;
        enc.validate_against(&table)?;
        let stats = column_stats(&table, &enc)?;
        let n_max = max_column_length(&stats, senseamp.offset)?;
        if block_size > n_max {
            return Err(Error::InvalidConfiguration(format!(
                "block size {block_size} exceeds the longest senseable column ({n_max} cells)"
            )));
        }
        let mut conductance = [[0.0; 3]; 3];
        for t in TernarySymbol::ALL {
            for s in TernarySymbol::ALL {
                conductance[symbol_index(t)][symbol_index(s)] =
                    1.0 / cell_resistance(t, s, &table, &enc)?;
            }
        }
        let references = (1..=block_size)
            .map(|n| {
                let r = reference_resistance(n, &stats)?;
                let lo = super::worst_match_column_r(n, &stats)?;
                if r.r_ref - senseamp.offset <= lo {
                    return Err(Error::InfeasibleReference {
                        n,
                        delta_r: r.r_ref - senseamp.offset - lo,
                    });
                }
                Ok(r)
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            columns,
            block_size,
            enc,
            table,
            senseamp,
            stats,
            n_max,
            conductance,
            references,
        })
    }

    pub fn from_image(image: &ArrayImage, table: Arc<ResistanceTable>) -> Result<Self> {
        let columns = image
            .words
            .iter()
            .map(|w| parse_word(w))
            .collect::<Result<_>>()?;
        Self::new(
            columns,
            image.block_size,
            image.encoding,
            table,
            image.senseamp,
        )
    }

    pub fn image(&self) -> ArrayImage {
        ArrayImage {
            words: self.columns.iter().map(|c| format_word(c)).collect(),
            block_size: self.block_size,
            encoding: self.enc,
            senseamp: self.senseamp,
        }
    }

    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer_pretty(out, &self.image())?;
        Ok(())
    }

    pub fn read_json<R: Read>(input: R, table: Arc<ResistanceTable>) -> Result<Self> {
        let image: ArrayImage = serde_json::from_reader(input)?;
        Self::from_image(&image, table)
    }

    pub fn columns(&self) -> &[Word] {
        &self.columns
    }

    pub fn word_length(&self) -> usize {
        self.columns[0].len()
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn stats(&self) -> &ColumnStats {
        &self.stats
    }

    pub fn max_column_length(&self) -> usize {
        self.n_max
    }

    pub fn encoding(&self) -> &EncodingScheme {
        &self.enc
    }

    pub fn table(&self) -> &ResistanceTable {
        &self.table
    }

    pub fn reference(&self, n: usize) -> Option<&ReferenceConfig> {
        n.checked_sub(1).and_then(|k| self.references.get(k))
    }

    fn search_column(&self, id: usize, word: &[TernarySymbol]) -> ColumnResult {
        let stored = &self.columns[id];
        let blocks: Vec<BlockResult> = stored
            .chunks(self.block_size)
            .zip(word.chunks(self.block_size))
            .enumerate()
            .map(|(block, (t, s))| {
                let g: f64 = t
                    .iter()
                    .zip(s)
                    .map(|(t, s)| self.conductance[symbol_index(*t)][symbol_index(*s)])
                    .sum();
                let r_col = 1.0 / g;
                let reference = &self.references[t.len() - 1];
                BlockResult {
                    block,
                    n: t.len(),
                    r_col,
                    r_ref: reference.r_ref,
                    verdict: sense(r_col, reference, &self.senseamp),
                }
            })
            .collect();
        let verdict = blocks
            .iter()
            .fold(Verdict::Match, |acc, b| acc.and(b.verdict));
        ColumnResult {
            column: id,
            verdict,
            blocks,
        }
    }

    pub fn search(&self, word: &[TernarySymbol]) -> Result<SearchResult> {
        if word.len() != self.word_length() {
            return Err(Error::LengthMismatch {
                expected: self.word_length(),
                found: word.len(),
            });
        }
        let columns = (0..self.columns.len())
            .into_par_iter()
            .map(|id| self.search_column(id, word))
            .collect();
        Ok(SearchResult {
            search: format_word(word),
            columns,
        })
    }

    pub fn search_str(&self, word: &str) -> Result<SearchResult> {
        self.search(&parse_word(word)?)
    }
}
