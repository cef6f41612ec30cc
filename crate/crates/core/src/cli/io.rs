//! Matrix files: Matrix Market `array complex general` and a small JSON form.
//!
//! Matrix Market stores entries column-major, one `re im` pair per line.
//! The JSON form is `{"rows": m, "cols": n, "data": [[re, im], ...]}` in
//! row-major order and round-trips bit-exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, C64};

const MM_BANNER: &str = "%%MatrixMarket";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormat {
    MatrixMarket,
    Json,
}

impl MatrixFormat {
    /// `.json` means JSON; `.mtx` / `.mm` mean Matrix Market.
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "json" => Some(MatrixFormat::Json),
            "mtx" | "mm" => Some(MatrixFormat::MatrixMarket),
            _ => None,
        }
    }
}

impl FromStr for MatrixFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mm" | "mtx" | "matrix-market" | "matrixmarket" => Ok(MatrixFormat::MatrixMarket),
            "json" => Ok(MatrixFormat::Json),
            _ => Err(Error::InvalidArgument(format!("unknown matrix format `{s}`"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonMatrix {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

/// Reads a matrix, taking the format from `format` or else the file
/// extension; files with neither are sniffed by their first byte.
pub fn read_matrix(path: &Path, format: Option<MatrixFormat>) -> Result<ComplexMatrix> {
    let text = fs::read_to_string(path)?;
    let format = format.or_else(|| MatrixFormat::from_path(path)).unwrap_or_else(|| {
        if text.trim_start().starts_with('{') {
            MatrixFormat::Json
        } else {
            MatrixFormat::MatrixMarket
        }
    });
    match format {
        MatrixFormat::MatrixMarket => parse_matrix_market(&text),
        MatrixFormat::Json => parse_json(&text),
    }
}

pub fn parse_matrix_market(text: &str) -> Result<ComplexMatrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::MalformedHeader("empty file".into()))?;
    let tokens: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.first().map(String::as_str) != Some(&MM_BANNER.to_ascii_lowercase()) {
        return Err(Error::MalformedHeader(format!("expected `{MM_BANNER}` banner, got `{header}`")));
    }
    if tokens[1..] != ["matrix", "array", "complex", "general"] {
        return Err(Error::MalformedHeader(format!(
            "only `matrix array complex general` is supported, got `{header}`"
        )));
    }
    let mut body = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (size_line, size) = body
        .next()
        .ok_or_else(|| Error::MalformedHeader("missing size line".into()))?;
    let dims: Vec<&str> = size.split_whitespace().collect();
    let parse_dim = |s: &str| {
        s.parse::<usize>().map_err(|e| Error::Parse {
            line: size_line,
            msg: format!("bad dimension `{s}`: {e}"),
        })
    };
    if dims.len() != 2 {
        return Err(Error::Parse {
            line: size_line,
            msg: format!("size line needs `rows cols`, got `{size}`"),
        });
    }
    let (rows, cols) = (parse_dim(dims[0])?, parse_dim(dims[1])?);
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyDimension);
    }

    let expected = rows * cols;
    let mut col_major = Vec::with_capacity(expected);
    for (line, l) in body {
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(Error::Parse {
                line,
                msg: format!("expected `real imag`, got `{l}`"),
            });
        }
        let mut z = [0.0; 2];
        for (slot, s) in z.iter_mut().zip(&parts) {
            *slot = s.parse::<f64>().map_err(|e| Error::Parse {
                line,
                msg: format!("bad number `{s}`: {e}"),
            })?;
            if !slot.is_finite() {
                return Err(Error::NonFiniteValue { line });
            }
        }
        col_major.push(C64::new(z[0], z[1]));
    }
    if col_major.len() != expected {
        return Err(Error::EntryCount {
            expected,
            found: col_major.len(),
        });
    }
    Ok(ComplexMatrix::from_fn(rows, cols, |i, j| col_major[j * rows + i]))
}

pub fn parse_json(text: &str) -> Result<ComplexMatrix> {
    let m: JsonMatrix = serde_json::from_str(text)?;
    if m.rows == 0 || m.cols == 0 {
        return Err(Error::EmptyDimension);
    }
    if m.data.len() != m.rows * m.cols {
        return Err(Error::EntryCount {
            expected: m.rows * m.cols,
            found: m.data.len(),
        });
    }
    let data = m.data.iter().map(|&[re, im]| C64::new(re, im)).collect();
    ComplexMatrix::new(m.rows, m.cols, data)
}

/// Matrix Market text; every value is printed in shortest round-trip form.
pub fn format_matrix_market(m: &ComplexMatrix) -> String {
    let mut out = format!("{MM_BANNER} matrix array complex general\n{} {}\n", m.rows(), m.cols());
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            let z = m[(i, j)];
            writeln!(out, "{:e} {:e}", z.re, z.im).expect("writing to a String");
        }
    }
    out
}

pub fn format_json(m: &ComplexMatrix) -> String {
    let doc = JsonMatrix {
        rows: m.rows(),
        cols: m.cols(),
        data: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
    };
    let mut s = serde_json::to_string(&doc).expect("matrix serializes");
    s.push('\n');
    s
}

pub fn format_matrix(m: &ComplexMatrix, format: MatrixFormat) -> String {
    match format {
        MatrixFormat::MatrixMarket => format_matrix_market(m),
        MatrixFormat::Json => format_json(m),
    }
}

pub fn write_matrix(path: &Path, m: &ComplexMatrix, format: MatrixFormat) -> Result<()> {
    fs::write(path, format_matrix(m, format))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const J_MM: &str = "%%MatrixMarket matrix array complex general\n% Jordan block\n2 2\n0 0\n0 0\n1 0\n0 0\n";

    #[test]
    fn matrix_market_is_column_major() {
        let j = parse_matrix_market(J_MM).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(j, expected);
    }

    #[test]
    fn json_one_by_one() {
        let m = parse_json(r#"{"rows":1,"cols":1,"data":[[0,1]]}"#).unwrap();
        assert_eq!(m[(0, 0)], C64::new(0.0, 1.0));
    }

    #[test]
    fn distinct_errors() {
        let short = "%%MatrixMarket matrix array complex general\n2 2\n0 0\n1 0\n0 0\n";
        assert!(matches!(
            parse_matrix_market(short),
            Err(Error::EntryCount { expected: 4, found: 3 })
        ));
        assert!(matches!(
            parse_matrix_market("%%MatrixMarket matrix coordinate real general\n1 1\n1\n"),
            Err(Error::MalformedHeader(_))
        ));
        assert!(matches!(parse_matrix_market("1 1\n0 0\n"), Err(Error::MalformedHeader(_))));
        assert!(matches!(
            parse_matrix_market("%%MatrixMarket matrix array complex general\n1 1\nnan 0\n"),
            Err(Error::NonFiniteValue { line: 3 })
        ));
        assert!(matches!(
            parse_matrix_market("%%MatrixMarket matrix array complex general\n1 1\n1 x\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_json(r#"{"rows":2,"cols":2,"data":[[0,1]]}"#),
            Err(Error::EntryCount { expected: 4, found: 1 })
        ));
        assert!(matches!(parse_json(r#"{"rows":1}"#), Err(Error::Json(_))));
    }

    #[test]
    fn round_trips() {
        let m = ComplexMatrix::from_fn(3, 2, |i, j| {
            C64::new((i as f64 + 0.1) / 3.0, -(j as f64) * std::f64::consts::PI * 1e-300)
        });
        assert_eq!(parse_json(&format_json(&m)).unwrap(), m);
        assert_eq!(parse_matrix_market(&format_matrix_market(&m)).unwrap(), m);
    }

    #[test]
    fn formats() {
        assert_eq!("json".parse::<MatrixFormat>().unwrap(), MatrixFormat::Json);
        assert_eq!("mtx".parse::<MatrixFormat>().unwrap(), MatrixFormat::MatrixMarket);
        assert!("csv".parse::<MatrixFormat>().is_err());
        assert_eq!(MatrixFormat::from_path(Path::new("a.MTX")), Some(MatrixFormat::MatrixMarket));
        assert_eq!(MatrixFormat::from_path(Path::new("a")), None);
    }
}
