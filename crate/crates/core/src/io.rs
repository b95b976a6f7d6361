//! CSV and JSON output. Floats are written with 17 significant digits so
//! that reading a file back reproduces every value bit for bit.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::diffmatrix::{DenseMatrix, MatrixSection, SectionMeta};
use crate::error::{Error, Result};
use crate::expansion::ErrorRow;

/// Shortest format that round-trips every finite f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes the entries row by row, no header.
pub fn write_matrix_csv<W: Write>(m: &DenseMatrix, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    for i in 0..m.rows() {
        w.write_record(m.row(i).iter().map(|&v| fmt_f64(v)))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_matrix_csv<R: Read>(input: R) -> Result<DenseMatrix> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(input);
    let mut data = Vec::new();
    let mut rows = 0;
    let mut cols = None;
    for record in r.records() {
        let record = record?;
        if *cols.get_or_insert(record.len()) != record.len() {
            return Err(Error::LengthMismatch { expected: cols.unwrap_or(0), got: record.len() });
        }
        for field in record.iter() {
            let v: f64 = field
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("'{field}' is not a number")))?;
            data.push(v);
        }
        rows += 1;
    }
    let cols = cols.unwrap_or(0);
    DenseMatrix::from_row_major(rows, cols, data)
        .ok_or(Error::LengthMismatch { expected: rows * cols, got: rows * cols })
}

/// `<stem>.csv` with the entries and `<stem>.json` with the metadata.
pub fn write_section(section: &MatrixSection, csv_path: &Path) -> Result<()> {
    write_matrix_csv(section.entries(), File::create(csv_path)?)?;
    write_json(&section.meta(), &csv_path.with_extension("json"))
}

pub fn read_section_meta(json_path: &Path) -> Result<SectionMeta> {
    Ok(serde_json::from_reader(File::open(json_path)?)?)
}

pub fn write_json<T: serde::Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut f = File::create(path)?;
    serde_json::to_writer_pretty(&mut f, value)?;
    writeln!(f)?;
    Ok(())
}

pub const ERROR_HEADER: [&str; 9] =
    ["family", "alpha", "basis", "N", "deriv", "sup_err", "l2_err", "log10_sup", "log10_l2"];

pub fn write_error_rows<W: Write>(rows: &[ErrorRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(ERROR_HEADER)?;
    for r in rows {
        w.write_record([
            r.family.kind().to_string(),
            fmt_f64(r.family.primary_parameter()),
            r.basis.to_string(),
            r.n.to_string(),
            r.deriv.to_string(),
            fmt_f64(r.sup_err),
            fmt_f64(r.l2_err),
            fmt_f64(r.log10_sup()),
            fmt_f64(r.log10_l2()),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Two-column CSV `index,value`.
pub fn write_vector_csv<W: Write>(header: &str, values: &[f64], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["index", header])?;
    for (i, &v) in values.iter().enumerate() {
        w.write_record([i.to_string(), fmt_f64(v)])?;
    }
    w.flush()?;
    Ok(())
}
