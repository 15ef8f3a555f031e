//! JSON encoding of tuples, vectors and matrices.
//!
//! A complex scalar is a two-element array `[re, im]`. Matrices are arrays of rows.
//! Floats are written with shortest round-trip formatting, so parse after serialize is
//! bit-exact for finite values.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::tuple::{ComplexMatrix, MatrixTuple};
use crate::C64;

pub type Entry = [f64; 2];

/// Row-major wire form of a [`MatrixTuple`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, try_from = "RawTupleFile")]
pub struct TupleFile {
    pub g: usize,
    pub rows: usize,
    pub cols: usize,
    pub matrices: Vec<Vec<Vec<Entry>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTupleFile {
    g: usize,
    rows: usize,
    cols: usize,
    #[serde(deserialize_with = "rectangular_matrices")]
    matrices: Vec<Vec<Vec<Entry>>>,
}

/// Reject ragged or non-finite data while the parser still knows the position.
fn rectangular_matrices<'de, D: serde::Deserializer<'de>>(de: D) -> Result<Vec<Vec<Vec<Entry>>>, D::Error> {
    use serde::de::Error as _;
    let mats = Vec::<Vec<Vec<Entry>>>::deserialize(de)?;
    let rows = mats.first().map_or(0, Vec::len);
    let cols = mats.first().and_then(|m| m.first()).map_or(0, Vec::len);
    for (k, m) in mats.iter().enumerate() {
        if m.len() != rows {
            return Err(D::Error::custom(format!("ragged data: matrices[{k}] has {} rows, matrices[0] has {rows}", m.len())));
        }
        for (r, row) in m.iter().enumerate() {
            if row.len() != cols {
                return Err(D::Error::custom(format!(
                    "ragged data: matrices[{k}][{r}] has {} entries, matrices[0][0] has {cols}",
                    row.len()
                )));
            }
            if let Some(c) = row.iter().position(|e| !e[0].is_finite() || !e[1].is_finite()) {
                return Err(D::Error::custom(format!("matrices[{k}][{r}][{c}] is not finite")));
            }
        }
    }
    Ok(mats)
}

impl TryFrom<RawTupleFile> for TupleFile {
    type Error = String;

    fn try_from(raw: RawTupleFile) -> Result<Self, String> {
        if raw.g == 0 {
            return Err("g must be at least 1".into());
        }
        if raw.matrices.len() != raw.g {
            return Err(format!("g is {} but {} matrices are given", raw.g, raw.matrices.len()));
        }
        for (k, m) in raw.matrices.iter().enumerate() {
            if m.len() != raw.rows {
                return Err(format!("matrices[{k}] has {} rows, expected {}", m.len(), raw.rows));
            }
            for (r, row) in m.iter().enumerate() {
                if row.len() != raw.cols {
                    return Err(format!("matrices[{k}][{r}] has {} entries, expected {}", row.len(), raw.cols));
                }
                if let Some(c) = row.iter().position(|e| !e[0].is_finite() || !e[1].is_finite()) {
                    return Err(format!("matrices[{k}][{r}][{c}] is not finite"));
                }
            }
        }
        Ok(Self { g: raw.g, rows: raw.rows, cols: raw.cols, matrices: raw.matrices })
    }
}

pub fn encode_scalar(z: &C64) -> Entry {
    [z.re, z.im]
}

pub fn encode_matrix(m: &ComplexMatrix) -> Vec<Vec<Entry>> {
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| encode_scalar(&m[(r, c)])).collect()).collect()
}

pub fn encode_vector(v: &DVector<C64>) -> Vec<Entry> {
    v.iter().map(encode_scalar).collect()
}

pub fn decode_matrix(rows: &[Vec<Entry>], cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows.len(), cols, |r, c| C64::new(rows[r][c][0], rows[r][c][1]))
}

impl From<&MatrixTuple> for TupleFile {
    fn from(t: &MatrixTuple) -> Self {
        Self { g: t.g(), rows: t.rows(), cols: t.cols(), matrices: t.iter().map(encode_matrix).collect() }
    }
}

impl TupleFile {
    pub fn to_tuple(&self) -> crate::Result<MatrixTuple> {
        MatrixTuple::new(self.matrices.iter().map(|m| decode_matrix(m, self.cols)).collect())
    }
}

/// Parse failure with the position reported by the JSON parser (line 0 when unknown).
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

pub fn parse_tuple_file(text: &str) -> Result<TupleFile, ParseError> {
    serde_json::from_str(text).map_err(|e| {
        let (mut line, mut column) = (e.line(), e.column());
        if line == 0 {
            // Header and data disagree: point at the data.
            (line, column) = locate(text, "\"matrices\"").unwrap_or((1, 1));
        }
        ParseError { line, column, message: strip_position(&e.to_string()) }
    })
}

/// One-based line and column of the first occurrence of `needle`.
fn locate(text: &str, needle: &str) -> Option<(usize, usize)> {
    let at = text.find(needle)?;
    let before = &text[..at];
    let line = before.matches('\n').count() + 1;
    let column = at - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    Some((line, column))
}

/// Parse and convert in one step.
pub fn parse_tuple(text: &str) -> Result<MatrixTuple, ParseError> {
    let file = parse_tuple_file(text)?;
    file.to_tuple().map_err(|e| ParseError { line: 0, column: 0, message: e.to_string() })
}

pub fn to_json(t: &MatrixTuple) -> String {
    serde_json::to_string(&TupleFile::from(t)).expect("tuple serializes")
}

/// serde_json appends " at line L column C"; the position is reported separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}
