//! Matrix serialization.
//!
//! Human form: one row per line, entries separated by commas, `#` starts a
//! comment. Structured form: a JSON object with `rows`, `cols`, `ring`
//! (`"Q"`, `"x"` or `"y"`), `nvars` and `entries`, the latter a row-major
//! array of rows whose elements use the canonical polynomial encoding.

use serde_json::{json, Value};

use crate::ring::{parse_rational, LaurentPoly, MultiPoly, Rational, Ring, RingError};

use super::{LinalgError, Matrix};

/// An entry type that can be written and read back.
pub trait MatrixEntry: Ring {
    /// Ring tag used in structured output.
    const TAG: &'static str;

    fn parse_entry(s: &str, nvars: usize) -> Result<Self, RingError>;
    fn entry_json(&self) -> Value;
    fn entry_from_json(v: &Value, nvars: usize) -> Result<Self, RingError>;
}

impl MatrixEntry for Rational {
    const TAG: &'static str = "Q";

    fn parse_entry(s: &str, _: usize) -> Result<Self, RingError> {
        parse_rational(s)
    }

    fn entry_json(&self) -> Value {
        json!(self.to_string())
    }

    fn entry_from_json(v: &Value, _: usize) -> Result<Self, RingError> {
        let s = v
            .as_str()
            .ok_or_else(|| RingError::Parse(format!("expected a rational string, got {v}")))?;
        parse_rational(s)
    }
}

impl MatrixEntry for LaurentPoly {
    const TAG: &'static str = "x";

    fn parse_entry(s: &str, nvars: usize) -> Result<Self, RingError> {
        LaurentPoly::parse(s, nvars)
    }

    fn entry_json(&self) -> Value {
        self.to_json()
    }

    fn entry_from_json(v: &Value, nvars: usize) -> Result<Self, RingError> {
        LaurentPoly::from_json(v, nvars)
    }
}

impl MatrixEntry for MultiPoly {
    const TAG: &'static str = "y";

    fn parse_entry(s: &str, nvars: usize) -> Result<Self, RingError> {
        MultiPoly::parse(s, nvars)
    }

    fn entry_json(&self) -> Value {
        self.to_json()
    }

    fn entry_from_json(v: &Value, nvars: usize) -> Result<Self, RingError> {
        MultiPoly::from_json(v, nvars)
    }
}

/// Parses the human form. Blank lines and comments are skipped.
pub fn parse_matrix<R: MatrixEntry>(text: &str, nvars: usize) -> Result<Matrix<R>, LinalgError> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|s| R::parse_entry(s, nvars))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| LinalgError::Malformed(format!("line {}: {e}", lineno + 1)))?;
        if let Some(first) = rows.first().map(Vec::len) {
            if first != row.len() {
                return Err(LinalgError::Malformed(format!(
                    "line {}: expected {first} entries, found {}",
                    lineno + 1,
                    row.len()
                )));
            }
        }
        rows.push(row);
    }
    Ok(Matrix::from_rows_in(rows, nvars))
}

impl<R: MatrixEntry> Matrix<R> {
    /// Human form, readable by [`parse_matrix`].
    pub fn to_text(&self) -> String {
        (0..self.rows())
            .map(|i| {
                let cells: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
                cells.join(", ") + "\n"
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = (0..self.rows())
            .map(|i| Value::Array(self.row(i).iter().map(R::entry_json).collect()))
            .collect();
        json!({
            "rows": self.rows(),
            "cols": self.cols(),
            "ring": R::TAG,
            "nvars": self.nvars(),
            "entries": entries,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, LinalgError> {
        let bad = |what: &str| LinalgError::Malformed(what.to_string());
        let field = |k: &str| {
            v.get(k)
                .and_then(Value::as_u64)
                .map(|n| n as usize)
                .ok_or_else(|| bad(&format!("missing field {k}")))
        };
        let (rows, cols, nvars) = (field("rows")?, field("cols")?, field("nvars")?);
        if v.get("ring").and_then(Value::as_str) != Some(R::TAG) {
            return Err(bad(&format!("ring tag is not {:?}", R::TAG)));
        }
        let entries = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing entries"))?;
        if entries.len() != rows {
            return Err(bad("row count disagrees with entries"));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for row in entries {
            let row = row.as_array().ok_or_else(|| bad("row is not an array"))?;
            if row.len() != cols {
                return Err(bad("column count disagrees with entries"));
            }
            for e in row {
                data.push(R::entry_from_json(e, nvars).map_err(|e| bad(&e.to_string()))?);
            }
        }
        Ok(Matrix::from_vec(rows, cols, nvars, data))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let text = "x1*x2, 0\nx2 - 1, 1  # comment\n";
        let m: Matrix<LaurentPoly> = parse_matrix(text, 2).unwrap();
        assert_eq!(m.shape(), (2, 2));
        let back: Matrix<LaurentPoly> = parse_matrix(&m.to_text(), 2).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn json_round_trip() {
        let m: Matrix<MultiPoly> = parse_matrix("y1 + y2, 0\ny2, -1/2 y1^2", 2).unwrap();
        assert_eq!(Matrix::<MultiPoly>::from_json(&m.to_json()).unwrap(), m);
        assert!(Matrix::<LaurentPoly>::from_json(&m.to_json()).is_err());
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(parse_matrix::<Rational>("1, 2\n3", 0).is_err());
    }
}
