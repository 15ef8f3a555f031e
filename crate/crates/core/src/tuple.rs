//! Matrix tuples `X = (X_1, ..., X_g)` of same-shape complex matrices.
//!
//! Coefficient tuples (`E`, `A`, `F`, `J`, `Xi`, ...) and evaluation points share this
//! type. Construction checks `g >= 1`, a common shape and finite entries.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::C64;

/// Dense complex matrix.
pub type ComplexMatrix = DMatrix<C64>;

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixTuple {
    rows: usize,
    cols: usize,
    mats: Vec<ComplexMatrix>,
}

impl MatrixTuple {
    pub fn new(mats: Vec<ComplexMatrix>) -> Result<Self> {
        let first = mats.first().ok_or(Error::EmptyTuple)?;
        let (rows, cols) = first.shape();
        for (index, m) in mats.iter().enumerate() {
            if m.shape() != (rows, cols) {
                return Err(Error::ShapeMismatch(format!(
                    "matrix {index} is {}x{}, expected {rows}x{cols}",
                    m.nrows(),
                    m.ncols()
                )));
            }
            if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite { index });
            }
        }
        Ok(Self { rows, cols, mats })
    }

    /// Tuple of `g` zero matrices of shape `rows x cols`.
    pub fn zeros(g: usize, rows: usize, cols: usize) -> Result<Self> {
        Self::new(vec![ComplexMatrix::zeros(rows, cols); g])
    }

    /// Level-1 point `(x_1, ..., x_g)` in `C^g`.
    pub fn scalar(xs: &[C64]) -> Result<Self> {
        Self::new(xs.iter().map(|&x| ComplexMatrix::from_element(1, 1, x)).collect())
    }

    /// Level-1 point from real coordinates.
    pub fn real_scalar(xs: &[f64]) -> Result<Self> {
        Self::scalar(&xs.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>())
    }

    /// Build a tuple from real row-major entries, one slice per matrix.
    pub fn from_real(rows: usize, cols: usize, entries: &[&[f64]]) -> Result<Self> {
        let mats = entries
            .iter()
            .map(|e| {
                if e.len() != rows * cols {
                    return Err(Error::ShapeMismatch(format!(
                        "expected {} entries, found {}",
                        rows * cols,
                        e.len()
                    )));
                }
                Ok(ComplexMatrix::from_row_iterator(
                    rows,
                    cols,
                    e.iter().map(|&x| C64::new(x, 0.0)),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(mats)
    }

    pub fn g(&self) -> usize {
        self.mats.len()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn ensure_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn get(&self, j: usize) -> &ComplexMatrix {
        &self.mats[j]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ComplexMatrix> {
        self.mats.iter()
    }

    pub fn as_slice(&self) -> &[ComplexMatrix] {
        &self.mats
    }

    pub fn into_inner(self) -> Vec<ComplexMatrix> {
        self.mats
    }

    /// Apply `f` to every entry of the tuple. The result must again be a valid tuple.
    pub fn map<F>(&self, f: F) -> Result<Self>
    where
        F: FnMut(&ComplexMatrix) -> ComplexMatrix,
    {
        Self::new(self.mats.iter().map(f).collect())
    }

    pub fn scale(&self, t: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, mats: self.mats.iter().map(|m| m * t).collect() }
    }

    pub fn scale_real(&self, t: f64) -> Self {
        self.scale(C64::new(t, 0.0))
    }

    /// Entrywise adjoint `(X_1^*, ..., X_g^*)`.
    pub fn adjoint(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            mats: self.mats.iter().map(|m| m.adjoint()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_layout(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            mats: self.mats.iter().zip(&other.mats).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale_real(-1.0))
    }

    /// Blockwise direct sum `(X_1 ⊕ Y_1, ..., X_g ⊕ Y_g)`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.g() != other.g() {
            return Err(Error::TupleLengthMismatch { expected: self.g(), found: other.g() });
        }
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| {
                let mut m = ComplexMatrix::zeros(r, c);
                m.view_mut((0, 0), a.shape()).copy_from(a);
                m.view_mut((self.rows, self.cols), b.shape()).copy_from(b);
                m
            })
            .collect();
        Self::new(mats)
    }

    /// `(L X_1 R, ..., L X_g R)`.
    pub fn sandwich(&self, left: &ComplexMatrix, right: &ComplexMatrix) -> Result<Self> {
        if left.ncols() != self.rows || right.nrows() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "cannot form L X R with L {}x{}, X {}x{}, R {}x{}",
                left.nrows(),
                left.ncols(),
                self.rows,
                self.cols,
                right.nrows(),
                right.ncols()
            )));
        }
        self.map(|m| left * m * right)
    }

    /// Largest Frobenius norm among the entries.
    pub fn max_norm(&self) -> f64 {
        self.mats.iter().map(|m| m.norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm of the whole tuple.
    pub fn norm(&self) -> f64 {
        self.mats.iter().map(|m| m.norm_squared()).sum::<f64>().sqrt()
    }

    /// Max over entries of the Frobenius distance to `other`.
    pub fn max_distance(&self, other: &Self) -> Result<f64> {
        self.check_same_layout(other)?;
        Ok(self.mats.iter().zip(&other.mats).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// The `g x (rows*cols)` matrix whose `j`-th row is `X_j` flattened row-major.
    pub fn flatten_rows(&self) -> ComplexMatrix {
        let n = self.rows * self.cols;
        ComplexMatrix::from_fn(self.g(), n, |j, idx| self.mats[j][(idx / self.cols, idx % self.cols)])
    }

    /// The `(rows*cols) x g` matrix whose `j`-th column is `X_j` flattened row-major.
    pub fn flatten_columns(&self) -> ComplexMatrix {
        self.flatten_rows().transpose()
    }

    fn check_same_layout(&self, other: &Self) -> Result<()> {
        if self.g() != other.g() {
            return Err(Error::TupleLengthMismatch { expected: self.g(), found: other.g() });
        }
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for MatrixTuple {
    type Output = ComplexMatrix;

    fn index(&self, j: usize) -> &ComplexMatrix {
        &self.mats[j]
    }
}

impl<'a> IntoIterator for &'a MatrixTuple {
    type Item = &'a ComplexMatrix;
    type IntoIter = std::slice::Iter<'a, ComplexMatrix>;

    fn into_iter(self) -> Self::IntoIter {
        self.mats.iter()
    }
}

/// Flatten a matrix row-major into a column vector.
pub fn flatten(m: &ComplexMatrix) -> nalgebra::DVector<C64> {
    nalgebra::DVector::from_iterator(m.len(), m.transpose().iter().copied())
}
