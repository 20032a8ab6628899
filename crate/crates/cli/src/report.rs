use std::io::Write;
use std::path::Path;

use serde_json::Value;

use crate::config::Format;
use crate::error::{CliError, CliResult};

/// What a command produced: a JSON document, a fixed-column table, and a verdict.
pub struct Report {
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// `Some` when an invariant or acceptance check failed.
    pub failure: Option<CliError>,
}

impl Report {
    pub fn write(&self, format: Format, out: Option<&Path>) -> CliResult<()> {
        let mut sink: Box<dyn Write> = match out {
            Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
            None => Box::new(std::io::stdout().lock()),
        };
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut sink, &self.json)?;
                writeln!(sink)?;
            }
            Format::Csv => write_csv(&mut sink, &self.header, &self.rows)?,
        }
        sink.flush()?;
        Ok(())
    }
}

pub fn write_csv<W: Write>(sink: W, header: &[&str], rows: &[Vec<String>]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv_file(path: &Path, header: &[&str], rows: &[Vec<String>]) -> CliResult<()> {
    write_csv(std::fs::File::create(path)?, header, rows)
}

/// `Some(Invariant)` when `ok` is false.
pub fn verdict(ok: bool, what: impl FnOnce() -> String) -> Option<CliError> {
    (!ok).then(|| CliError::Invariant(what()))
}

pub fn cell(x: f64) -> String {
    x.to_string()
}
