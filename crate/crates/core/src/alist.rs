//! MacKay alist format for sparse parity check matrices.
//!
//! Layout: `N M` (columns, rows), then the maximum column and row weights,
//! the N column weights, the M row weights, one line per column listing its
//! nonzero rows, and one line per row listing its nonzero columns. Indices are
//! one-based. Empty neighbour lists are written as empty lines; no zero padding
//! is emitted, and zero entries are skipped when reading.

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

fn join(values: impl IntoIterator<Item = usize>) -> String {
    values
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn to_alist(h: &BitMatrix) -> String {
    let t = h.transpose();
    let col_weights: Vec<usize> = (0..t.rows()).map(|j| t.row_weight(j)).collect();
    let row_weights: Vec<usize> = (0..h.rows()).map(|i| h.row_weight(i)).collect();
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", h.cols(), h.rows()));
    out.push_str(&format!(
        "{} {}\n",
        col_weights.iter().max().copied().unwrap_or(0),
        row_weights.iter().max().copied().unwrap_or(0)
    ));
    out.push_str(&join(col_weights.iter().copied()));
    out.push('\n');
    out.push_str(&join(row_weights.iter().copied()));
    out.push('\n');
    for j in 0..t.rows() {
        out.push_str(&join(t.row_ones(j).map(|i| i + 1)));
        out.push('\n');
    }
    for i in 0..h.rows() {
        out.push_str(&join(h.row_ones(i).map(|j| j + 1)));
        out.push('\n');
    }
    out
}

fn numbers(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad alist token {t:?}"))))
        .collect()
}

/// Parses an alist document. The row lists must agree with the column lists.
pub fn from_alist(text: &str) -> Result<BitMatrix> {
    let mut lines = text.lines();
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| Error::Parse(format!("alist truncated before {what}")))
    };
    let dims = numbers(next("dimensions")?)?;
    let [cols, rows] = dims[..] else {
        return Err(Error::Parse("alist header must hold two numbers".into()));
    };
    next("maximum weights")?;
    let col_weights = numbers(next("column weights")?)?;
    let row_weights = numbers(next("row weights")?)?;
    if col_weights.len() != cols || row_weights.len() != rows {
        return Err(Error::Parse("alist weight lists have the wrong length".into()));
    }
    let mut h = BitMatrix::zeros(rows, cols);
    for (j, &w) in col_weights.iter().enumerate() {
        let entries: Vec<usize> = numbers(next("column lists")?)?.into_iter().filter(|&x| x != 0).collect();
        if entries.len() != w {
            return Err(Error::Parse(format!("column {} lists {} entries, weight says {w}", j + 1, entries.len())));
        }
        for i in entries {
            if i > rows {
                return Err(Error::Parse(format!("row index {i} out of range")));
            }
            h.set(i - 1, j, true);
        }
    }
    for (i, &w) in row_weights.iter().enumerate() {
        let entries: Vec<usize> = numbers(next("row lists")?)?.into_iter().filter(|&x| x != 0).collect();
        if entries.len() != w {
            return Err(Error::Parse(format!("row {} lists {} entries, weight says {w}", i + 1, entries.len())));
        }
        for j in entries {
            if j > cols || !h.get(i, j - 1) {
                return Err(Error::Parse(format!("row {} disagrees with column lists", i + 1)));
            }
        }
    }
    Ok(h)
}
