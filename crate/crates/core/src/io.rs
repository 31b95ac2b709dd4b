//! Text formats for arrangements.
//!
//! JSON carries any dimension: `{"shape":[n1,...,nd],"order":"row-major","values":[...]}`.
//! CSV is two-dimensional only: `n_1` lines of `n_2` comma-separated values.
//! Values are 1-based in both.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::shape::Shape;

pub fn to_json(a: &Arrangement) -> String {
    serde_json::to_string(a).expect("arrangement serializes")
}

pub fn from_json(text: &str) -> Result<Arrangement> {
    Ok(serde_json::from_str(text)?)
}

/// Rows joined by `\n`, no trailing newline.
pub fn to_csv(a: &Arrangement) -> Result<String> {
    let rows = a.rows().ok_or_else(|| {
        Error::Format(format!(
            "CSV holds two-dimensional arrangements only, shape is {}",
            a.shape()
        ))
    })?;
    Ok(rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join("\n"))
}

pub fn from_csv(text: &str) -> Result<Arrangement> {
    let rows: Vec<Vec<usize>> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(r, line)| {
            line.split(',')
                .map(|field| {
                    field.trim().parse::<usize>().map_err(|e| {
                        Error::Format(format!("row {}: bad value {field:?}: {e}", r + 1))
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let n1 = rows.len();
    let n2 = rows.first().map_or(0, Vec::len);
    if let Some(r) = rows.iter().position(|row| row.len() != n2) {
        return Err(Error::Format(format!(
            "row {} has {} values, expected {n2}",
            r + 1,
            rows[r].len()
        )));
    }
    if n1 < 2 || n2 < 2 {
        return Err(Error::Format(format!(
            "CSV must describe an n1 x n2 matrix with n1, n2 >= 2, got {n1} x {n2}"
        )));
    }
    if n1 > n2 {
        return Err(Error::Format(format!(
            "CSV has more rows ({n1}) than columns ({n2}); store the transpose"
        )));
    }
    let shape = Shape::from_normalized(&[n1, n2])?;
    Arrangement::new(shape, rows.into_iter().flatten().collect())
}
