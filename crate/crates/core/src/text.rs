//! Text forms shared by the library and the command line.
//!
//! * matrix: rows separated by `;`, entries by `,` (`1,0;0,1`)
//! * point list: points separated by `;`, coordinates by `:` (`1:0:0;0:1:0`)
//! * lineal: a matrix optionally followed by ` cols=0,2`
//!
//! Numbers are emitted with 12 significant digits.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::space::parse_coords;

/// Significant digits used for every emitted number.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats like C's `%#.12g`: 12 significant digits, trailing zeros kept,
/// scientific notation when the decimal exponent is below -4 or at least 12.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let v = if v == 0.0 { 0.0 } else { v };
    let p = SIGNIFICANT_DIGITS;
    let sci = format!("{:.*e}", p - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..p as i32).contains(&exp) {
        let decimals = (p as i32 - 1 - exp) as usize;
        format!("{:.*}", decimals, v)
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    }
}

pub fn format_list(values: &[f64], sep: &str) -> String {
    values.iter().map(|v| format_number(*v)).collect::<Vec<_>>().join(sep)
}

pub fn format_matrix(m: &DMatrix<f64>) -> String {
    m.row_iter()
        .map(|r| r.iter().map(|v| format_number(*v)).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

fn parse_number(t: &str) -> Result<f64> {
    let t = t.trim();
    t.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Parse(format!("bad number `{t}`")))
}

pub fn parse_matrix(s: &str) -> Result<DMatrix<f64>> {
    let rows = s
        .trim()
        .split(';')
        .map(|row| row.split(',').map(parse_number).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let ncols = rows[0].len();
    if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
        return Err(Error::Parse(format!(
            "ragged matrix: row of {} entries where {} expected",
            bad.len(),
            ncols
        )));
    }
    Ok(DMatrix::from_row_iterator(rows.len(), ncols, rows.into_iter().flatten()))
}

pub fn parse_index_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad index `{}`", t.trim())))
        })
        .collect()
}

pub fn parse_points(s: &str) -> Result<Vec<Vec<f64>>> {
    s.split(';')
        .map(|p| parse_coords(p).map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

/// Parses `matrix [cols=i,j,…]`.
pub fn parse_lineal(s: &str) -> Result<(DMatrix<f64>, Option<Vec<usize>>)> {
    let s = s.trim();
    match s.split_once("cols=") {
        Some((m, cols)) => Ok((parse_matrix(m)?, Some(parse_index_list(cols)?))),
        None => Ok((parse_matrix(s)?, None)),
    }
}
