use serde::{Deserialize, Serialize};

use crate::cell::{match_oracle, pair_resistances, EncodingScheme};
use crate::device::ResistanceTable;
use crate::error::{invalid, Error, Result};

/// Single-cell resistance bounds that size a column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ColumnStats {
    /// Highest matching-cell resistance, Ohm.
    pub r_match_w: f64,
    /// Lowest matching-cell resistance, Ohm.
    pub r_match_b: f64,
    /// Lowest mismatching-cell resistance, Ohm.
    pub r_mismatch: f64,
}

impl ColumnStats {
    pub fn new(r_match_w: f64, r_match_b: f64, r_mismatch: f64) -> Result<Self> {
        if !(r_match_b > 0.0 && r_match_w >= r_match_b) {
            return Err(invalid("column_stats", "need R_match_w >= R_match_b > 0"));
        }
        if !(r_mismatch > r_match_w) {
            return Err(Error::DeviceUnusable {
                delta_r: r_mismatch - r_match_w,
                margin: 0.0,
            });
        }
        Ok(Self {
            r_match_w,
            r_match_b,
            r_mismatch,
        })
    }
}

/// Exhaustive scan of the nine `(stored, search)` pairs.
pub fn column_stats(table: &ResistanceTable, enc: &EncodingScheme) -> Result<ColumnStats> {
    let pairs = pair_resistances(table, enc)?;
    let (mut w, mut b, mut mm) = (f64::NEG_INFINITY, f64::INFINITY, f64::INFINITY);
    for (t, s, r) in pairs {
        if match_oracle(t, s) {
            w = w.max(r);
            b = b.min(r);
        } else {
            mm = mm.min(r);
        }
    }
    ColumnStats::new(w, b, mm)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("n", "a column needs at least one cell"));
    }
    Ok(())
}

/// Every cell at the worst match: `R_match_w / n`.
pub fn worst_match_column_r(n: usize, stats: &ColumnStats) -> Result<f64> {
    check_n(n)?;
    Ok(stats.r_match_w / n as f64)
}

/// One cell at the lowest mismatch, the rest at the best match.
pub fn worst_one_mismatch_column_r(n: usize, stats: &ColumnStats) -> Result<f64> {
    check_n(n)?;
    Ok(1.0 / ((n - 1) as f64 / stats.r_match_b + 1.0 / stats.r_mismatch))
}

pub fn delta_r(n: usize, stats: &ColumnStats) -> Result<f64> {
    Ok(worst_one_mismatch_column_r(n, stats)? - worst_match_column_r(n, stats)?)
}

/// Columns longer than this are never considered.
pub const COLUMN_LENGTH_CAP: usize = 1 << 16;

/// Longest column whose `delta_r` still reaches `margin`, capped at
/// [`COLUMN_LENGTH_CAP`].
pub fn max_column_length(stats: &ColumnStats, margin: f64) -> Result<usize> {
    if !(margin >= 0.0) {
        return Err(invalid("margin", "must be non-negative"));
    }
    let d1 = delta_r(1, stats)?;
    if d1 < margin {
        return Err(Error::DeviceUnusable {
            delta_r: d1,
            margin,
        });
    }
    // delta_r falls until well past its zero crossing and then creeps back
    // toward zero from below, so the first miss is final. Without a
    // crossover (R_match_b = R_match_w) it stays positive forever.
    let mut n = 1;
    while n < COLUMN_LENGTH_CAP && delta_r(n + 1, stats)? >= margin {
        n += 1;
    }
    Ok(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferenceConfig {
    pub n: usize,
    pub r_ref: f64,
}

/// Reference for an `n`-cell column, at the geometric mean of the worst
/// match and worst one-bit mismatch.
pub fn reference_resistance(n: usize, stats: &ColumnStats) -> Result<ReferenceConfig> {
    let lo = worst_match_column_r(n, stats)?;
    let hi = worst_one_mismatch_column_r(n, stats)?;
    if hi <= lo {
        return Err(Error::InfeasibleReference {
            n,
            delta_r: hi - lo,
        });
    }
    Ok(ReferenceConfig {
        n,
        r_ref: (lo * hi).sqrt(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingPoint {
    pub n: usize,
    pub r_match_col: f64,
    pub r_mismatch_col: f64,
    pub delta_r: f64,
}

pub const SCALING_HEADER: [&str; 4] = [
    "n",
    "R_match_w_col_ohm",
    "R_mismatch_w_col_ohm",
    "delta_R_ohm",
];

pub fn scaling_curve(stats: &ColumnStats, n_max: usize) -> Result<Vec<ScalingPoint>> {
    (1..=n_max)
        .map(|n| {
            let r_match_col = worst_match_column_r(n, stats)?;
            let r_mismatch_col = worst_one_mismatch_column_r(n, stats)?;
            Ok(ScalingPoint {
                n,
                r_match_col,
                r_mismatch_col,
                delta_r: r_mismatch_col - r_match_col,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn column_formulas() {
        let s = ColumnStats::new(5e3, 4e3, 40e3).unwrap();
        assert_eq!(worst_match_column_r(1, &s).unwrap(), 5e3);
        assert!(rel(worst_match_column_r(10, &s).unwrap(), 500.0) < 1e-12);
        assert_eq!(worst_one_mismatch_column_r(1, &s).unwrap(), 40e3);
        assert!((worst_one_mismatch_column_r(5, &s).unwrap() - 975.6).abs() < 0.05);
        assert!(worst_match_column_r(0, &s).is_err());
        assert!(worst_one_mismatch_column_r(0, &s).is_err());
    }

    #[test]
    fn geometric_reference() {
        // Solve for stats whose n = 1 bounds are 500 and 2000 ohm.
        let s = ColumnStats::new(500.0, 400.0, 2000.0).unwrap();
        let r = reference_resistance(1, &s).unwrap();
        assert!(rel(r.r_ref, 1000.0) < 1e-12);
        let n_max = max_column_length(&s, 0.0).unwrap();
        assert!(reference_resistance(n_max + 1, &s).is_err());
    }

    #[test]
    fn length_at_full_margin_is_one() {
        let s = ColumnStats::new(4665.0, 4640.0, 5305.0).unwrap();
        let d1 = delta_r(1, &s).unwrap();
        assert_eq!(max_column_length(&s, d1).unwrap(), 1);
        assert!(max_column_length(&s, d1 * 1.001).is_err());
        // Crossover between 23 and 24 for these bounds.
        assert_eq!(max_column_length(&s, 0.0).unwrap(), 23);
    }

    #[test]
    fn no_crossover_hits_cap() {
        let s = ColumnStats::new(4665.0, 4665.0, 5305.0).unwrap();
        assert_eq!(max_column_length(&s, 0.0).unwrap(), COLUMN_LENGTH_CAP);
    }

    #[test]
    fn delta_r_turns_back_after_crossover() {
        let s = ColumnStats::new(4665.0, 4640.0, 5305.0).unwrap();
        let d: Vec<f64> = (1..=64).map(|n| delta_r(n, &s).unwrap()).collect();
        let low = (0..64).min_by(|a, b| d[*a].total_cmp(&d[*b])).unwrap() + 1;
        assert!(low > 40 && low < 55, "{low}");
        assert!(d[1..].iter().all(|x| *x < d[0]));
        assert!(d[low - 1..].iter().all(|x| *x < 0.0));
    }

    #[test]
    fn mismatch_must_exceed_match() {
        assert!(matches!(
            ColumnStats::new(5e3, 4e3, 4.9e3),
            Err(Error::DeviceUnusable { .. })
        ));
    }
}
