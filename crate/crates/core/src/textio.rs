//! Plain-text element and subspace files.
//!
//! An element file holds its coordinates as whitespace-separated scalars. A
//! subspace file starts with `ambient_dim k` and continues with `k` rows of
//! `ambient_dim` scalars. Lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::linalg::Subspace;
use crate::scalar::{Scalar, ScalarError, ScalarField};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TextError {
    #[error("line {line}: {source}")]
    Parse { line: usize, source: ScalarError },
    #[error("bad header: {0}")]
    Header(String),
    #[error("expected {expected} scalars, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_line<F: ScalarField>(field: &F, line: usize, text: &str) -> Result<Vec<F::Elem>, TextError> {
    text.split_whitespace()
        .map(|tok| field.parse(tok).map_err(|source| TextError::Parse { line, source }))
        .collect()
}

/// All scalars in `text`, in order.
pub fn parse_scalars<F: ScalarField>(field: &F, text: &str) -> Result<Vec<F::Elem>, TextError> {
    let mut out = Vec::new();
    for (n, l) in content_lines(text) {
        out.extend(parse_line(field, n, l)?);
    }
    Ok(out)
}

/// Exactly `n` scalars.
pub fn parse_vector<F: ScalarField>(field: &F, text: &str, n: usize) -> Result<Vec<F::Elem>, TextError> {
    let v = parse_scalars(field, text)?;
    if v.len() != n {
        return Err(TextError::DimensionMismatch { expected: n, got: v.len() });
    }
    Ok(v)
}

pub fn format_vector<S: Scalar>(v: &[S]) -> String {
    let mut s = String::new();
    for (i, c) in v.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        write!(s, "{c}").expect("writing to a String");
    }
    s
}

/// The header and rows of a subspace file, without reducing them.
pub fn parse_rows<F: ScalarField>(field: &F, text: &str) -> Result<(usize, Vec<Vec<F::Elem>>), TextError> {
    let mut lines = content_lines(text);
    let (_, header) = lines.next().ok_or_else(|| TextError::Header("empty file".into()))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| TextError::Header(header.to_string())))
        .collect::<Result<_, _>>()?;
    let [ambient, k] = nums[..] else {
        return Err(TextError::Header(header.to_string()));
    };
    let mut rows = Vec::with_capacity(k);
    for (n, l) in lines {
        let row = parse_line(field, n, l)?;
        if row.len() != ambient {
            return Err(TextError::DimensionMismatch { expected: ambient, got: row.len() });
        }
        rows.push(row);
    }
    if rows.len() != k {
        return Err(TextError::Header(format!("header announces {k} rows, found {}", rows.len())));
    }
    Ok((ambient, rows))
}

pub fn parse_subspace<F: ScalarField>(field: &F, text: &str) -> Result<Subspace<F::Elem>, TextError> {
    let (ambient, rows) = parse_rows(field, text)?;
    Ok(Subspace::span(ambient, rows).expect("row lengths checked"))
}

/// Header plus rows, one per line.
pub fn format_rows<S: Scalar>(ambient: usize, rows: &[Vec<S>]) -> String {
    let mut s = format!("{ambient} {}\n", rows.len());
    for r in rows {
        s.push_str(&format_vector(r));
        s.push('\n');
    }
    s
}

/// The canonical basis of `w` in subspace-file form.
pub fn format_subspace<S: Scalar>(w: &Subspace<S>) -> String {
    format_rows(w.ambient_dim(), &w.basis_vectors())
}
