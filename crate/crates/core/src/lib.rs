//! Straintronic MTJ ternary CAM simulator.
//!
//! A magnetostrictive free layer on a piezoelectric film, read by a tunnel
//! junction whose fixed layer is skewed from the easy axis. Stress from two
//! electrode pairs turns it into a ternary cell: the search symbol drives
//! one pair, the stored symbol gates the other.
//!
//! The layers build on each other:
//!
//! - [`magnetodynamics`]: macrospin LLG with thermal noise.
//! - [`device`]: voltages to stress to resistance, transfer curves, the
//!   resistance table every higher layer reads.
//! - [`cell`]: symbol encoding, the dynamic and local-refresh storage.
//! - [`array`](mod@array): columns of cells, reference sizing, blocked search.
//! - [`analysis`]: Monte Carlo chirality, energy and EDP.
//! - [`harness`]: the JSON-driven commands behind the `smtjsim` binary.
//!
//! Start with the examples:
//!
//! | example | shows |
//! |---|---|
//! | `demag_factors` | shape anisotropy of the free layer |
//! | `transfer_curve` | the resistance valley at 0 K and 300 K |
//! | `valley_shift` | the gate voltage moving the valley; dipole strength |
//! | `chirality` | clockwise-only rotation under thermal noise |
//! | `tcam_search` | 144-bit searches with both kinds of masking |
//! | `column_scaling` | how long a column can get |
//! | `local_refresh` | programming and reading the refresh MTJ pair |
//! | `edp_sweep` | energy-delay product against clock frequency |
//!
//! ```no_run
//! use smtjsim::device::{transfer_curve, characterize_valley, Device, DEFAULT_V1, ENCODING_RANGE};
//! use smtjsim::magnetodynamics::SimOptions;
//!
//! let device = Device::standard();
//! let curve = transfer_curve(&device, DEFAULT_V1, ENCODING_RANGE, 81, 0.0, &SimOptions::default(), 1)?;
//! let valley = characterize_valley(&curve)?;
//! println!("valley at {:.3} V", valley.center_v2);
//! # Ok::<(), smtjsim::Error>(())
//! ```

pub mod analysis;
pub mod array;
pub mod cell;
pub mod device;
pub mod error;
pub mod export;
pub mod harness;
pub mod magnetodynamics;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
