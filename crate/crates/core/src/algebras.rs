//! Linear independence, algebra closure and structure constants.
//!
//! Index convention: for a linearly independent tuple `J` spanning an algebra,
//! `J_k J_j = sum_s (Xi_j)_{k,s} J_s`. The same convention defines convexotonic
//! tuples: `Xi_k Xi_j = sum_s (Xi_j)_{k,s} Xi_s`.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::linalg::{self, orthonormal_residual, unflatten, ComplexVector};
use crate::tuple::{flatten, ComplexMatrix, MatrixTuple};
use crate::C64;

/// Default relative residual above which a product is considered outside the span.
pub const DEFAULT_SPAN_TOL: f64 = 1e-8;

/// Products with norm at or below this floor are treated as exact zeros.
const ZERO_PRODUCT_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    pub xi: MatrixTuple,
    /// Max over `(k, j)` of the absolute least-squares residual.
    pub residual: f64,
    /// Max over `(k, j)` of the residual relative to the norm of the product.
    pub relative_residual: f64,
    pub convexotonic_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraClosure {
    /// Original tuple followed by the appended elements `C_1, ..., C_h`, each of unit
    /// Frobenius norm and orthogonal to everything before it.
    pub extended: MatrixTuple,
    pub appended_count: usize,
}

pub fn linear_independent(t: &MatrixTuple, tol: f64) -> bool {
    linalg::numerical_rank(&t.flatten_rows(), tol) == t.g()
}

/// Least-squares solver for coordinates in the span of a fixed independent tuple.
///
/// One QR factorization of the flattened basis serves every right-hand side.
pub struct SpanSolver {
    q: ComplexMatrix,
    r: ComplexMatrix,
    basis: ComplexMatrix,
    rows: usize,
    cols: usize,
}

impl SpanSolver {
    pub fn new(basis: &MatrixTuple, tol: f64) -> Result<Self> {
        if !linear_independent(basis, tol) {
            return Err(Error::DependentInput);
        }
        let phi = basis.flatten_columns();
        let qr = phi.clone().qr();
        Ok(Self { q: qr.q(), r: qr.r(), basis: phi, rows: basis.rows(), cols: basis.cols() })
    }

    /// Coordinates of `m` and the absolute residual `||m - sum_s c_s J_s||`.
    pub fn solve(&self, m: &ComplexMatrix) -> Result<(DVector<C64>, f64)> {
        if m.shape() != (self.rows, self.cols) {
            return Err(Error::ShapeMismatch(format!(
                "product is {}x{}, basis elements are {}x{}",
                m.nrows(),
                m.ncols(),
                self.rows,
                self.cols
            )));
        }
        let p = flatten(m);
        let rhs = self.q.adjoint() * &p;
        let c = self
            .r
            .solve_upper_triangular(&rhs)
            .ok_or(Error::DependentInput)?;
        let residual = (&p - &self.basis * &c).norm();
        Ok((c, residual))
    }
}

/// Solve `product(k, j) = sum_s (Xi_j)_{k,s} basis_s` for all `(k, j)`.
fn solve_constants<P>(basis: &MatrixTuple, tol: f64, product: P) -> Result<StructureConstants>
where
    P: Fn(usize, usize) -> ComplexMatrix,
{
    let g = basis.g();
    let solver = SpanSolver::new(basis, tol)?;
    let mut xi = vec![ComplexMatrix::zeros(g, g); g];
    let mut residual: f64 = 0.0;
    let mut relative: f64 = 0.0;
    for k in 0..g {
        for (j, xi_j) in xi.iter_mut().enumerate() {
            let p = product(k, j);
            let (c, res) = solver.solve(&p)?;
            let pn = p.norm();
            let rel = if pn > ZERO_PRODUCT_FLOOR { res / pn } else { res };
            residual = residual.max(res);
            relative = relative.max(rel);
            for s in 0..g {
                xi_j[(k, s)] = c[s];
            }
        }
    }
    if relative > tol {
        return Err(Error::SpanViolation { residual: relative });
    }
    let xi = MatrixTuple::new(xi)?;
    let convexotonic_residual = convexotonic_residual(&xi)?;
    Ok(StructureConstants { xi, residual, relative_residual: relative, convexotonic_residual })
}

/// Structure constants of a linearly independent tuple spanning an algebra.
pub fn structure_constants(j: &MatrixTuple, tol: f64) -> Result<StructureConstants> {
    j.ensure_square()?;
    solve_constants(j, tol, |k, i| j.get(k) * j.get(i))
}

/// Constants `Psi` with `F_l C F_j = sum_s (Psi_j)_{l,s} F_s`; convexotonic whenever they exist.
pub fn pencil_structure_constants(f: &MatrixTuple, c: &ComplexMatrix, tol: f64) -> Result<StructureConstants> {
    if c.shape() != (f.cols(), f.rows()) {
        return Err(Error::ShapeMismatch(format!(
            "middle factor must be {}x{}, found {}x{}",
            f.cols(),
            f.rows(),
            c.nrows(),
            c.ncols()
        )));
    }
    solve_constants(f, tol, |l, i| f.get(l) * c * f.get(i))
}

/// Max over `(j, k)` of `||Xi_k Xi_j - sum_s (Xi_j)_{k,s} Xi_s||`.
pub fn convexotonic_residual(xi: &MatrixTuple) -> Result<f64> {
    let g = xi.g();
    if xi.shape() != (g, g) {
        return Err(Error::ShapeMismatch(format!(
            "convexotonic tuple of length {g} needs {g}x{g} entries, found {}x{}",
            xi.rows(),
            xi.cols()
        )));
    }
    let mut worst: f64 = 0.0;
    for j in 0..g {
        for k in 0..g {
            let mut diff = xi.get(k) * xi.get(j);
            for s in 0..g {
                diff -= xi.get(s) * xi.get(j)[(k, s)];
            }
            worst = worst.max(diff.norm());
        }
    }
    Ok(worst)
}

pub fn is_convexotonic(xi: &MatrixTuple, tol: f64) -> Result<bool> {
    Ok(convexotonic_residual(xi)? <= tol)
}

/// Extend an independent tuple to a basis of the algebra it generates.
///
/// Products are scanned in lexicographic `(k, j)` order over the current list; a
/// product is appended when its component outside the current span exceeds
/// `tol * ||product||`. What is appended is that component, normalized, which keeps the
/// basis and hence the structure constants well scaled. Rounds repeat until nothing new
/// appears.
pub fn algebra_closure(a: &MatrixTuple, tol: f64) -> Result<AlgebraClosure> {
    a.ensure_square()?;
    if !linear_independent(a, tol) {
        return Err(Error::DependentInput);
    }
    let d = a.rows();
    let scale = a.max_norm();
    let mut elems: Vec<ComplexMatrix> = a.as_slice().to_vec();
    let mut ortho: Vec<ComplexVector> = Vec::new();
    for m in &elems {
        let v = flatten(m);
        let q = orthonormal_residual(&ortho, &v, 0.0).ok_or(Error::DependentInput)?;
        ortho.push(q);
    }

    loop {
        let n = elems.len();
        let mut appended = false;
        for k in 0..n {
            for j in 0..n {
                if elems.len() >= d * d {
                    break;
                }
                let p = &elems[k] * &elems[j];
                let pn = p.norm();
                if pn <= ZERO_PRODUCT_FLOOR * scale * scale {
                    continue;
                }
                let Some(q) = orthonormal_residual(&ortho, &flatten(&p), tol * pn) else {
                    continue;
                };
                elems.push(unflatten(&q, d, d));
                ortho.push(q);
                appended = true;
            }
        }
        if !appended {
            break;
        }
    }
    let appended_count = elems.len() - a.g();
    Ok(AlgebraClosure { extended: MatrixTuple::new(elems)?, appended_count })
}
