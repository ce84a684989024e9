use std::io::Write;
use std::path::PathBuf;

use clap::ValueEnum;
use hpdirichlet::record::Record;
use serde::Serialize;

use crate::CliResult;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Writes to a file when a path is given, otherwise to stdout.
pub struct Sink<'a> {
    path: Option<&'a PathBuf>,
}

impl<'a> Sink<'a> {
    pub fn new(path: Option<&'a PathBuf>) -> Self {
        Self { path }
    }

    pub fn write(&self, text: &str) -> CliResult<()> {
        match self.path {
            Some(p) => std::fs::write(p, text)?,
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
            }
        }
        Ok(())
    }
}

/// Header plus one line per row. The header comes from the column list so
/// that an empty table still names its columns.
pub fn csv_string<T: Record>(rows: &[T]) -> CliResult<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(T::COLUMNS)?;
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| crate::usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("rows serialize") + "\n"
}

pub fn columns_help<T: Record>() -> String {
    format!("CSV columns: {}", T::COLUMNS.join(", "))
}
