//! CSV writing shared by every report type.
//!
//! Files carry one header row, use `.` as the decimal mark and end every
//! record with `\n`. Floats are written in shortest round-trip form.

use std::io::Write;

use serde::Serialize;

use crate::error::Result;

pub fn write_csv<W, R, I>(out: W, header: &[&str], rows: I) -> Result<()>
where
    W: Write,
    R: Serialize,
    I: IntoIterator<Item = R>,
{
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_bytes<R, I>(header: &[&str], rows: I) -> Result<Vec<u8>>
where
    R: Serialize,
    I: IntoIterator<Item = R>,
{
    let mut buf = Vec::new();
    write_csv(&mut buf, header, rows)?;
    Ok(buf)
}
