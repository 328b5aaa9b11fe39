use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use super::VerificationRecord;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 11] = [
    "suite",
    "param_n",
    "param_p",
    "param_c",
    "param_d",
    "param_e",
    "param_seed",
    "computed",
    "predicted",
    "verdict",
    "elapsed_ms",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::usage(format!("unknown report format `{other}`"))),
        }
    }
}

enum Sink {
    Csv(Box<csv::Writer<Box<dyn Write>>>),
    Json { out: Box<dyn Write>, first: bool },
}

/// Streams records to CSV or a JSON array, flushing after every record.
pub struct ReportWriter {
    sink: Sink,
    written: usize,
}

impl ReportWriter {
    pub fn new(out: Box<dyn Write>, format: ReportFormat) -> Result<Self> {
        let sink = match format {
            ReportFormat::Csv => {
                let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
                w.write_record(CSV_HEADER)?;
                w.flush()?;
                Sink::Csv(Box::new(w))
            }
            ReportFormat::Json => {
                let mut out = out;
                out.write_all(b"[")?;
                Sink::Json { out, first: true }
            }
        };
        Ok(ReportWriter { sink, written: 0 })
    }

    pub fn create(path: &Path, format: ReportFormat) -> Result<Self> {
        let file = File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::new(Box::new(BufWriter::new(file)), format)
    }

    pub fn write(&mut self, record: &VerificationRecord) -> Result<()> {
        match &mut self.sink {
            Sink::Csv(w) => {
                w.serialize(record)?;
                w.flush()?;
            }
            Sink::Json { out, first } => {
                out.write_all(if *first { b"\n  " } else { b",\n  " })?;
                serde_json::to_writer(&mut *out, record)?;
                out.flush()?;
                *first = false;
            }
        }
        self.written += 1;
        Ok(())
    }

    pub fn written(&self) -> usize {
        self.written
    }

    pub fn finish(self) -> Result<()> {
        match self.sink {
            Sink::Csv(mut w) => w.flush()?,
            Sink::Json { mut out, first } => {
                out.write_all(if first { b"]\n" } else { b"\n]\n" })?;
                out.flush()?;
            }
        }
        Ok(())
    }
}

/// Path of the metadata file written next to a report.
pub(crate) fn meta_path(report: &Path) -> PathBuf {
    let mut name = report.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

pub(crate) fn write_meta(report: &Path, meta: &impl Serialize) -> Result<()> {
    let path = meta_path(report);
    let file = File::create(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, meta)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}
