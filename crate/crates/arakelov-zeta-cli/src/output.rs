//! Record sinks (CSV or JSON lines, to stdout or a file) and gnuplot helpers.

use crate::config::OutputFormat;
use crate::error::CliError;
use serde::Serialize;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// Writes serializable records in one format.
pub struct RecordSink {
    inner: SinkKind,
}

enum SinkKind {
    Csv(csv::Writer<Box<dyn Write>>),
    Jsonl(Box<dyn Write>),
}

impl RecordSink {
    /// Opens stdout or the given file.
    pub fn open(format: OutputFormat, path: Option<&Path>) -> Result<Self, CliError> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        let inner = match format {
            OutputFormat::Csv => SinkKind::Csv(csv::Writer::from_writer(out)),
            OutputFormat::Jsonl => SinkKind::Jsonl(out),
        };
        Ok(Self { inner })
    }

    /// Writes one record.
    pub fn write<T: Serialize>(&mut self, record: &T) -> Result<(), CliError> {
        match &mut self.inner {
            SinkKind::Csv(w) => w.serialize(record)?,
            SinkKind::Jsonl(w) => {
                serde_json::to_writer(&mut *w, record)?;
                w.write_all(b"\n")?;
            }
        }
        Ok(())
    }

    /// Flushes buffered output.
    pub fn finish(self) -> Result<(), CliError> {
        match self.inner {
            SinkKind::Csv(mut w) => w.flush()?,
            SinkKind::Jsonl(mut w) => w.flush()?,
        }
        Ok(())
    }
}

/// A two-column plot of a data file written by one of the commands.
pub struct PlotSpec<'a> {
    pub title: &'a str,
    pub x_label: &'a str,
    pub y_label: &'a str,
    /// 1-based CSV column numbers.
    pub x_column: usize,
    pub y_column: usize,
}

/// Writes a gnuplot script plotting `data` (a CSV file with a header row).
pub fn write_gnuplot(script: &Path, data: &Path, plot: &PlotSpec<'_>) -> Result<(), CliError> {
    let mut f = BufWriter::new(File::create(script)?);
    writeln!(f, "set datafile separator ','")?;
    writeln!(f, "set key autotitle columnhead")?;
    writeln!(f, "set title '{}'", plot.title)?;
    writeln!(f, "set xlabel '{}'", plot.x_label)?;
    writeln!(f, "set ylabel '{}'", plot.y_label)?;
    writeln!(f, "set grid")?;
    writeln!(
        f,
        "plot '{}' using {}:{} with linespoints pointtype 7 pointsize 0.4",
        data.display(),
        plot.x_column,
        plot.y_column
    )?;
    f.flush()?;
    Ok(())
}
