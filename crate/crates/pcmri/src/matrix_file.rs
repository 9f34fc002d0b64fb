//! Plain-text matrix files.
//!
//! ```text
//! 4
//! 1   2   *   5
//! 1/2 1   4   *
//! *   1/4 1   2
//! 1/5 *   1/2 1
//! ```
//!
//! The first line holds `n`, followed by `n` rows of `n` whitespace-separated
//! tokens: `*` for a missing comparison, otherwise a decimal number or a
//! fraction `p/q`. Blank lines and `#` comments are ignored.

use std::fmt;
use std::path::Path;

use pcmri_core::IncompletePcm;

/// Relative tolerance for the reciprocal check on hand-written files.
pub const RECIPROCAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn parse_token(token: &str) -> Option<Option<f64>> {
    if token == "*" {
        return Some(None);
    }
    let value = match token.split_once('/') {
        Some((p, q)) => p.parse::<f64>().ok()? / q.parse::<f64>().ok()?,
        None => token.parse::<f64>().ok()?,
    };
    Some(Some(value))
}

pub fn parse_matrix(text: &str) -> Result<IncompletePcm, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, header) = lines.next().ok_or_else(|| err(0, "empty file"))?;
    let n: usize = header
        .parse()
        .map_err(|_| err(first, format!("expected the matrix size, found {header:?}")))?;
    if n < 2 {
        return Err(err(first, "matrix size must be at least 2"));
    }
    let mut rows: Vec<(usize, Vec<Option<f64>>)> = Vec::with_capacity(n);
    for (line, content) in lines {
        if rows.len() == n {
            return Err(err(line, "more rows than the declared size"));
        }
        let row = content
            .split_whitespace()
            .map(|t| parse_token(t).ok_or_else(|| err(line, format!("invalid entry {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(err(line, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push((line, row));
    }
    if rows.len() != n {
        return Err(err(0, format!("expected {n} rows, found {}", rows.len())));
    }
    let mut upper = Vec::new();
    for i in 0..n {
        let (line, row) = &rows[i];
        match row[i] {
            Some(1.0) => {}
            _ => return Err(err(*line, format!("diagonal entry {} must be 1", i + 1))),
        }
        for j in i + 1..n {
            let (a, b) = (row[j], rows[j].1[i]);
            match (a, b) {
                (None, None) => upper.push((i, j, None)),
                (Some(x), Some(y)) => {
                    if !(x > 0.0 && y > 0.0) || !x.is_finite() || !y.is_finite() {
                        return Err(err(*line, format!("entries ({}, {}) must be positive", i + 1, j + 1)));
                    }
                    if (x * y - 1.0).abs() > RECIPROCAL_TOLERANCE {
                        return Err(err(
                            rows[j].0,
                            format!("entry ({}, {}) is not the reciprocal of ({}, {})", j + 1, i + 1, i + 1, j + 1),
                        ));
                    }
                    upper.push((i, j, Some(x)));
                }
                _ => {
                    return Err(err(
                        *line,
                        format!("entries ({}, {}) and ({}, {}) must both be missing or both known", i + 1, j + 1, j + 1, i + 1),
                    ))
                }
            }
        }
    }
    IncompletePcm::new(n, &upper).map_err(|e| err(0, e.to_string()))
}

pub fn read_matrix(path: &Path) -> anyhow::Result<IncompletePcm> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    Ok(parse_matrix(&text)?)
}

/// Renders a matrix in the file format, `*` for missing entries. Saaty values
/// below one are written as fractions.
pub fn format_matrix(pcm: &IncompletePcm) -> String {
    let n = pcm.n();
    let mut out = format!("{n}\n");
    for i in 0..n {
        let row: Vec<String> = (0..n)
            .map(|j| match pcm.get(i, j) {
                None => "*".to_string(),
                Some(v) => match pcmri_core::SaatyValue::from_value(v) {
                    Some(s) => s.to_string(),
                    None => format!("{v}"),
                },
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
