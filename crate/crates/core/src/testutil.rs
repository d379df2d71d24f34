use std::sync::{Arc, OnceLock};

use crate::cell::EncodingScheme;
use crate::device::{anchored_grid, build_resistance_table, uniform_grid, Device, ResistanceTable};
use crate::magnetodynamics::SimOptions;

pub(crate) const TEST_V_F: f64 = -0.069;

/// 25 mV table of the default device, aligned with the encoding levels.
pub(crate) fn coarse_table() -> &'static (Arc<ResistanceTable>, EncodingScheme) {
    static CELL: OnceLock<(Arc<ResistanceTable>, EncodingScheme)> = OnceLock::new();
    CELL.get_or_init(|| {
        let enc = EncodingScheme::standard(TEST_V_F);
        let g2 = uniform_grid(-0.1, 0.7, 0.025);
        let g3 = anchored_grid(-0.1, 0.7, 0.025, 0.2 + TEST_V_F);
        let table =
            build_resistance_table(&Device::standard(), 0.01, &g2, &g3, &SimOptions::default())
                .expect("table");
        (Arc::new(table), enc)
    })
}
