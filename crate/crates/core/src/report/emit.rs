use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use super::{RectangleDecomposition, SweepRow};
use crate::error::{invalid, Error, Result};

/// Column order of sweep CSV files.
pub const SWEEP_HEADER: [&str; 6] = ["Nz", "e0_sum", "e0_int", "e_cas", "coeff", "quad_error"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(invalid(
                "format",
                format!("unknown format `{other}` (expected csv or json)"),
            )),
        }
    }
}

/// Something [`emit`] can write.
#[derive(Clone, Copy, Debug)]
pub enum Payload<'a> {
    Rows(&'a [SweepRow]),
    Rectangles(&'a RectangleDecomposition),
}

// Floats go through the csv serializer, which prints the shortest decimal
// that parses back to the same double.
fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_writer(out)
}

/// Writes sweep rows as CSV with header `Nz,e0_sum,e0_int,e_cas,coeff,quad_error`.
pub fn write_rows_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        w.serialize((r.nz, r.e0_sum, r.e0_int, r.e_cas, r.coeff, r.quad_error))?;
    }
    w.flush().map_err(|e| io_error("<csv>", e))?;
    Ok(())
}

/// Reads rows written by [`write_rows_csv`]. The convergence flag is not
/// part of the CSV layout and comes back as `true`.
pub fn read_rows_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input);
    let header = reader.headers()?.clone();
    if header.iter().ne(SWEEP_HEADER) {
        return Err(invalid("csv", format!("unexpected header {:?}", header)));
    }
    reader
        .deserialize::<(usize, f64, f64, f64, f64, f64)>()
        .map(|rec| {
            let (nz, e0_sum, e0_int, e_cas, coeff, quad_error) = rec?;
            Ok(SweepRow {
                nz,
                e0_sum,
                e0_int,
                e_cas,
                coeff,
                quad_error,
                converged: true,
            })
        })
        .collect()
}

/// Writes a rectangle decomposition as three CSV sections: the rectangles
/// (`left,width,height`), the sampled curve (`akz,omega`) and the two areas.
pub fn write_rectangles_csv<W: Write>(dec: &RectangleDecomposition, out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["left", "width", "height"])?;
    for r in &dec.rects {
        w.serialize((r.left, r.width, r.height))?;
    }
    w.write_record(["# curve"])?;
    w.write_record(["akz", "omega"])?;
    for p in &dec.curve {
        w.serialize((p.akz, p.omega))?;
    }
    w.write_record(["# areas"])?;
    w.write_record(["sum_area", "int_area"])?;
    w.serialize((dec.sum_area, dec.int_area))?;
    w.flush().map_err(|e| io_error("<csv>", e))?;
    Ok(())
}

fn write_json<T: Serialize + ?Sized, W: Write>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out).map_err(|e| io_error("<json>", e))?;
    Ok(())
}

fn write_payload<W: Write>(payload: Payload<'_>, format: Format, out: W) -> Result<()> {
    match (payload, format) {
        (Payload::Rows(rows), Format::Csv) => write_rows_csv(rows, out),
        (Payload::Rows(rows), Format::Json) => write_json(rows, out),
        (Payload::Rectangles(dec), Format::Csv) => write_rectangles_csv(dec, out),
        (Payload::Rectangles(dec), Format::Json) => write_json(dec, out),
    }
}

fn io_error(path: impl AsRef<Path>, source: io::Error) -> Error {
    Error::Io {
        path: path.as_ref().to_path_buf(),
        source,
    }
}

/// Writes `payload` to `destination`, or to stdout when it is `-`.
pub fn emit(payload: Payload<'_>, format: Format, destination: &str) -> Result<()> {
    if destination == "-" {
        let stdout = io::stdout();
        return write_payload(payload, format, stdout.lock());
    }
    let file = File::create(destination).map_err(|e| io_error(destination, e))?;
    let mut out = BufWriter::new(file);
    write_payload(payload, format, &mut out).map_err(|e| match e {
        Error::Io { source, .. } => io_error(destination, source),
        other => other,
    })?;
    out.flush().map_err(|e| io_error(destination, e))
}
