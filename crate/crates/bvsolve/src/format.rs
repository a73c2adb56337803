//! Plain-text scalar files and factorization dumps.
//!
//! A scalar file holds one value per line, either a decimal literal
//! (`0.25`, `-1.5e-3`) or an exact fraction `p/q`. Blank lines and lines
//! starting with `#` are skipped. Values are kept as exact rationals; the
//! floating path rounds them to nearest.

use std::fs;
use std::path::Path;

use bvsolve_core::exact::{self, BigRational};
use bvsolve_core::BidiagonalFactorization;
use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::AppError;

/// Parses one scalar exactly. Returns `None` on malformed input.
pub fn parse_scalar(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    parse_decimal(text)
}

fn parse_decimal(text: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(k) => (&text[..k], text[k + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let all: String = [int_part, frac_part].concat();
    let mut value = BigRational::from_integer(all.parse::<BigInt>().ok()?);
    let shift = exponent.checked_sub(i32::try_from(frac_part.len()).ok()?)?;
    let ten = BigRational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= Pow::pow(&ten, shift.unsigned_abs());
    } else {
        value /= Pow::pow(&ten, shift.unsigned_abs());
    }
    Some(if negative { -value } else { value })
}

/// Parses the contents of a scalar file; `path` only labels errors.
pub fn parse_scalars(text: &str, path: &Path) -> Result<Vec<BigRational>, AppError> {
    let mut values = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value = parse_scalar(line).ok_or_else(|| AppError::Parse {
            path: path.to_path_buf(),
            line: k + 1,
            text: line.to_string(),
        })?;
        values.push(value);
    }
    Ok(values)
}

pub fn read_text(path: &Path) -> Result<String, AppError> {
    fs::read_to_string(path).map_err(|source| AppError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_scalars(path: &Path) -> Result<Vec<BigRational>, AppError> {
    parse_scalars(&read_text(path)?, path)
}

pub fn to_f64(values: &[BigRational]) -> Vec<f64> {
    exact::vector_to_f64(values)
}

/// Shortest decimal that reads back to the same binary64.
pub fn render_vector(values: &[f64]) -> String {
    values.iter().map(|v| format!("{v}\n")).collect()
}

/// 17 significant digits: lossless for binary64.
pub fn render_entry(v: f64) -> String {
    format!("{v:.16e}")
}

/// Compact array, one matrix row per line.
pub fn render_factorization(f: &BidiagonalFactorization) -> String {
    let order = f.order();
    let mut out = String::new();
    for row in f.compact().chunks(order) {
        let cells: Vec<String> = row.iter().map(|v| render_entry(*v)).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FactorizationDoc {
    pub n: usize,
    pub nodes: Vec<f64>,
    pub compact: Vec<Vec<f64>>,
}

impl FactorizationDoc {
    pub fn new(nodes: &[f64], f: &BidiagonalFactorization) -> FactorizationDoc {
        FactorizationDoc {
            n: f.degree(),
            nodes: nodes.to_vec(),
            compact: f.compact().chunks(f.order()).map(<[f64]>::to_vec).collect(),
        }
    }
}

/// Reads back either the text dump or the JSON document.
pub fn parse_factorization(text: &str, path: &Path) -> Result<BidiagonalFactorization, AppError> {
    let malformed = |reason: String| AppError::Malformed {
        path: path.to_path_buf(),
        reason,
    };
    let rows: Vec<Vec<f64>> = if text.trim_start().starts_with('{') {
        let doc: FactorizationDoc =
            serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
        doc.compact
    } else {
        let mut rows = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|cell| parse_scalar(cell).map(|r| exact::to_f64(&r)))
                .collect::<Option<Vec<f64>>>()
                .ok_or_else(|| AppError::Parse {
                    path: path.to_path_buf(),
                    line: k + 1,
                    text: line.to_string(),
                })?;
            rows.push(row);
        }
        rows
    };
    let order = rows.len();
    if order == 0 || rows.iter().any(|r| r.len() != order) {
        return Err(malformed(format!(
            "expected a square array, found {order} rows"
        )));
    }
    Ok(BidiagonalFactorization::from_compact(order, rows.concat())?)
}

pub fn read_factorization(path: &Path) -> Result<BidiagonalFactorization, AppError> {
    parse_factorization(&read_text(path)?, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        exact::ratio(p, q)
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("1/12"), Some(r(1, 12)));
        assert_eq!(parse_scalar(" -3/6 "), Some(r(-1, 2)));
        assert_eq!(parse_scalar("0.25"), Some(r(1, 4)));
        assert_eq!(parse_scalar("-1.5e-3"), Some(r(-3, 2000)));
        assert_eq!(parse_scalar("2E2"), Some(r(200, 1)));
        assert_eq!(parse_scalar(".5"), Some(r(1, 2)));
        assert_eq!(parse_scalar("7"), Some(r(7, 1)));
        for bad in ["", "1/0", "abc", "1.2.3", "nan", "inf", "1e", "--1", "."] {
            assert_eq!(parse_scalar(bad), None, "{bad}");
        }
    }

    #[test]
    fn decimal_rounds_like_the_standard_parser() {
        for s in [
            "0.1",
            "0.3333333333333333",
            "6.6666666666666663e-1",
            "1e-300",
            "123456789.123456789",
        ] {
            let exact = parse_scalar(s).unwrap();
            assert_eq!(exact::to_f64(&exact), s.parse::<f64>().unwrap(), "{s}");
        }
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# nodes\n\n1/4\n  # indented comment\n0.75\n";
        let v = parse_scalars(text, Path::new("t")).unwrap();
        assert_eq!(v, vec![r(1, 4), r(3, 4)]);
        let err = parse_scalars("1\nx\n", Path::new("t")).unwrap_err();
        assert!(matches!(err, AppError::Parse { line: 2, .. }));
    }

    #[test]
    fn factorization_text_round_trips_bitwise() {
        let nodes = bvsolve_core::NodeSet::equispaced(15);
        let f = bvsolve_core::factorize(&nodes).unwrap();
        let back = parse_factorization(&render_factorization(&f), Path::new("t")).unwrap();
        assert_eq!(back, f);
        let json = serde_json::to_string(&FactorizationDoc::new(&nodes, &f)).unwrap();
        assert_eq!(parse_factorization(&json, Path::new("t")).unwrap(), f);
    }

    #[test]
    fn non_square_dump_is_rejected() {
        let err = parse_factorization("1 2\n3\n", Path::new("t")).unwrap_err();
        assert!(matches!(err, AppError::Malformed { .. }));
    }
}
