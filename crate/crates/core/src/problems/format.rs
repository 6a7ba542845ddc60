//! Plain-text matrix-polynomial files.
//!
//! ```text
//! d degree
//! re im        # A_0[0][0]
//! re im        # A_0[0][1]
//! ...          # d·d lines per coefficient, row-major, A_0 first
//! ```
//!
//! Everything after `#` on a line is ignored, as are blank lines.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use super::polynomial::MatrixPolynomial;
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_polynomial(text: &str) -> Result<MatrixPolynomial> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then_some((i + 1, content))
    });
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "missing header 'd degree'"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [d, degree] = fields[..] else {
        return Err(parse_error(
            header_line,
            format!("header must be 'd degree', got '{header}'"),
        ));
    };
    let d: usize = d
        .parse()
        .map_err(|_| parse_error(header_line, format!("invalid dimension '{d}'")))?;
    let degree: usize = degree
        .parse()
        .map_err(|_| parse_error(header_line, format!("invalid degree '{degree}'")))?;
    if d == 0 {
        return Err(parse_error(header_line, "dimension must be positive"));
    }
    let mut last_line = header_line;
    let mut coeffs = Vec::with_capacity(degree + 1);
    for c in 0..=degree {
        let mut data = Vec::with_capacity(d * d);
        for e in 0..d * d {
            let (line, content) = lines.next().ok_or_else(|| {
                parse_error(
                    last_line + 1,
                    format!(
                        "coefficient {c} is truncated: expected {} entries, found {e}",
                        d * d
                    ),
                )
            })?;
            last_line = line;
            let parts: Vec<&str> = content.split_whitespace().collect();
            let [re, im] = parts[..] else {
                return Err(parse_error(
                    line,
                    format!("coefficient {c}, entry {e}: expected 're im', got '{content}'"),
                ));
            };
            let parse = |s: &str| -> Result<f64> {
                match s.parse::<f64>() {
                    Ok(v) if v.is_finite() => Ok(v),
                    _ => Err(parse_error(
                        line,
                        format!("coefficient {c}, entry {e}: invalid number '{s}'"),
                    )),
                }
            };
            data.push(Complex64::new(parse(re)?, parse(im)?));
        }
        coeffs.push(ComplexMatrix::from_row_major(d, d, data)?);
    }
    if let Some((line, content)) = lines.next() {
        return Err(parse_error(
            line,
            format!("unexpected trailing content '{content}'"),
        ));
    }
    MatrixPolynomial::new(coeffs).map_err(|e| parse_error(header_line, e.to_string()))
}

/// Serializes with shortest round-trip exponent notation, so `parse` restores
/// every entry bit for bit.
pub fn format_polynomial(p: &MatrixPolynomial) -> String {
    let d = p.dim();
    let mut out = format!("{d} {}\n", p.degree());
    for (c, a) in p.coefficients().iter().enumerate() {
        let _ = writeln!(out, "# A_{c}");
        for i in 0..d {
            for j in 0..d {
                let z = a[(i, j)];
                let _ = writeln!(out, "{:e} {:e}", z.re, z.im);
            }
        }
    }
    out
}

pub fn load_polynomial(path: impl AsRef<Path>) -> Result<MatrixPolynomial> {
    parse_polynomial(&std::fs::read_to_string(path)?)
}

pub fn save_polynomial(p: &MatrixPolynomial, path: impl AsRef<Path>) -> Result<()> {
    Ok(std::fs::write(path, format_polynomial(p))?)
}
