use std::io::{BufRead, Read, Write};

use super::report::PruneReport;
use crate::error::{Error, Result};
use crate::objectives::ElementId;

/// Writes one id per line.
pub fn write_ids<W: Write>(mut out: W, ids: &[ElementId]) -> Result<()> {
    for id in ids {
        writeln!(out, "{id}")?;
    }
    out.flush()?;
    Ok(())
}

/// Reads one id per line; blank lines and `#` comments are ignored.
pub fn read_ids<R: BufRead>(reader: R) -> Result<Vec<ElementId>> {
    let mut ids = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        ids.push(body.parse().map_err(|_| Error::Parse {
            line: i + 1,
            message: format!("{body:?} is not an element id"),
        })?);
    }
    Ok(ids)
}

pub fn write_report<W: Write>(mut out: W, report: &PruneReport) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

pub fn read_report<R: Read>(reader: R) -> Result<PruneReport> {
    Ok(serde_json::from_reader(reader)?)
}
