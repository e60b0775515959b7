use std::io::{Read, Write};

use crate::bounds::QuotientCurveSample;
use crate::complex::{format_sig17, Complex64};
use crate::orbit::OrbitSet;

use super::IoError;

pub const ORBIT_COLUMNS: [&str; 2] = ["re", "im"];
pub const QUOTIENT_COLUMNS: [&str; 7] = ["t", "re", "im", "r", "gamma", "gamma_hat", "ratio"];

pub fn write_orbit_csv<W: Write>(orbit: &OrbitSet, out: W) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(ORBIT_COLUMNS)?;
    for t in orbit.iter() {
        w.write_record([format_sig17(t.re()), format_sig17(t.im())])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_quotient_csv<W: Write>(
    samples: &[QuotientCurveSample],
    out: W,
) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(QUOTIENT_COLUMNS)?;
    for s in samples {
        let row = [
            s.t,
            s.z_gamma.re(),
            s.z_gamma.im(),
            s.r,
            s.gamma,
            s.gamma_hat,
            s.ratio,
        ];
        w.write_record(row.map(format_sig17))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads the named columns of every row, in the order given.
fn read_columns<R: Read, const N: usize>(
    input: R,
    columns: [&'static str; N],
) -> Result<Vec<[f64; N]>, IoError> {
    let mut r = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = r.headers()?.clone();
    let mut index = [0usize; N];
    for (slot, name) in index.iter_mut().zip(columns) {
        *slot = headers
            .iter()
            .position(|h| h == name)
            .ok_or(IoError::MissingColumn(name))?;
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let mut vals = [0.0; N];
        for (v, (&col, name)) in vals.iter_mut().zip(index.iter().zip(columns)) {
            let field = rec.get(col).unwrap_or("");
            *v = field.parse().map_err(|_| IoError::BadRow {
                row: i + 1,
                message: format!("cannot parse {name} = {field:?}"),
            })?;
        }
        rows.push(vals);
    }
    if rows.is_empty() {
        return Err(IoError::Empty);
    }
    Ok(rows)
}

pub fn read_orbit_csv<R: Read>(input: R) -> Result<Vec<Complex64>, IoError> {
    Ok(read_columns(input, ORBIT_COLUMNS)?
        .into_iter()
        .map(|[re, im]| Complex64::new(re, im))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuotientRow {
    pub t: f64,
    pub z: Complex64,
    pub r: f64,
    pub gamma: f64,
    pub gamma_hat: f64,
    pub ratio: f64,
}

pub fn read_quotient_csv<R: Read>(input: R) -> Result<Vec<QuotientRow>, IoError> {
    Ok(read_columns(input, QUOTIENT_COLUMNS)?
        .into_iter()
        .map(|[t, re, im, r, gamma, gamma_hat, ratio]| QuotientRow {
            t,
            z: Complex64::new(re, im),
            r,
            gamma,
            gamma_hat,
            ratio,
        })
        .collect())
}
