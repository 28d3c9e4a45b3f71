use std::fs::File;
use std::io::{self, BufWriter, Write};

use lattice_casimir::report::{emit, Format, Payload};
use lattice_casimir::{Error, RectangleDecomposition, Result, SweepRow};
use serde::Serialize;

use crate::args::OutputFormat;

pub struct Sink {
    path: String,
    inner: Box<dyn Write>,
}

impl Sink {
    pub fn open(path: &str) -> Result<Self> {
        let inner: Box<dyn Write> = if path == "-" {
            Box::new(io::stdout().lock())
        } else {
            Box::new(BufWriter::new(
                File::create(path).map_err(|e| self::io(path, e))?,
            ))
        };
        Ok(Self {
            path: path.to_owned(),
            inner,
        })
    }

    pub fn line(&mut self, text: impl AsRef<str>) -> Result<()> {
        writeln!(self.inner, "{}", text.as_ref()).map_err(|e| io(&self.path, e))
    }

    pub fn json<T: Serialize + ?Sized>(&mut self, value: &T) -> Result<()> {
        serde_json::to_writer_pretty(&mut self.inner, value)?;
        self.line("")
    }

    /// CSV with a header and one serialized tuple or struct per record.
    pub fn csv<R: Serialize>(
        &mut self,
        header: &[&str],
        records: impl IntoIterator<Item = R>,
    ) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(&mut self.inner);
        w.write_record(header).map_err(Error::from)?;
        for r in records {
            w.serialize(r).map_err(Error::from)?;
        }
        w.flush().map_err(|e| io(&self.path, e))
    }

    pub fn finish(mut self) -> Result<()> {
        self.inner.flush().map_err(|e| io(&self.path, e))
    }
}

fn io(path: &str, source: io::Error) -> Error {
    Error::Io {
        path: path.into(),
        source,
    }
}

/// Readable form of a float: plain decimals in a moderate range, otherwise
/// scientific notation. Both are the shortest round-trip representation.
pub fn num(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-4..1e7).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

const ROW_HEADER: [&str; 7] = [
    "Nz",
    "e0_sum",
    "e0_int",
    "e_cas",
    "coeff",
    "quad_error",
    "converged",
];

pub fn table(sink: &mut Sink, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let render = |cells: &mut dyn Iterator<Item = &str>| {
        cells
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    sink.line(render(&mut header.iter().copied()))?;
    for row in rows {
        sink.line(render(&mut row.iter().map(String::as_str)))?;
    }
    Ok(())
}

pub fn rows_table(sink: &mut Sink, rows: &[SweepRow]) -> Result<()> {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.nz.to_string(),
                num(r.e0_sum),
                num(r.e0_int),
                num(r.e_cas),
                num(r.coeff),
                num(r.quad_error),
                r.converged.to_string(),
            ]
        })
        .collect();
    table(sink, &ROW_HEADER, &cells)
}

/// Sweep rows in any format.
pub fn write_rows(rows: &[SweepRow], format: OutputFormat, out: &str) -> Result<()> {
    match format {
        OutputFormat::Csv => emit(Payload::Rows(rows), Format::Csv, out),
        OutputFormat::Json => emit(Payload::Rows(rows), Format::Json, out),
        OutputFormat::Table => {
            let mut sink = Sink::open(out)?;
            rows_table(&mut sink, rows)?;
            sink.finish()
        }
    }
}

pub fn write_rectangles(
    dec: &RectangleDecomposition,
    format: OutputFormat,
    out: &str,
) -> Result<()> {
    match format {
        OutputFormat::Csv => emit(Payload::Rectangles(dec), Format::Csv, out),
        OutputFormat::Json => emit(Payload::Rectangles(dec), Format::Json, out),
        OutputFormat::Table => {
            let mut sink = Sink::open(out)?;
            let cells: Vec<Vec<String>> = dec
                .rects
                .iter()
                .map(|r| vec![num(r.left), num(r.width), num(r.height)])
                .collect();
            table(&mut sink, &["left", "width", "height"], &cells)?;
            sink.line(format!("sum_area = {}", num(dec.sum_area)))?;
            sink.line(format!("int_area = {}", num(dec.int_area)))?;
            sink.finish()
        }
    }
}
