//! Dense complex kernels: Kronecker products, linear pencils, norms, Hermitian
//! eigenvalues, numerical rank and kernels.
//!
//! Rank and kernel thresholds are relative: a singular value counts as zero when it
//! is at most `tol * sigma_max`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tuple::{flatten, ComplexMatrix, MatrixTuple};
use crate::C64;

/// Default relative threshold for numerical rank and kernels.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Relative tolerance on `||m - m^*||` accepted by [`min_eig_hermitian`].
pub const HERMITIAN_TOL: f64 = 1e-10;

pub type ComplexVector = DVector<C64>;

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// `Lambda_A(X) = sum_j A_j ⊗ X_j`, of shape `(d n) x (e m)`.
pub fn lambda_eval(a: &MatrixTuple, x: &MatrixTuple) -> Result<ComplexMatrix> {
    if a.g() != x.g() {
        return Err(Error::TupleLengthMismatch { expected: a.g(), found: x.g() });
    }
    let mut out = ComplexMatrix::zeros(a.rows() * x.rows(), a.cols() * x.cols());
    for (aj, xj) in a.iter().zip(x.iter()) {
        out += kron(aj, xj);
    }
    Ok(out)
}

/// Monic Hermitian pencil `L_A(X) = I + Lambda_A(X) + Lambda_A(X)^*`.
pub fn hermitian_pencil(a: &MatrixTuple, x: &MatrixTuple) -> Result<ComplexMatrix> {
    a.ensure_square()?;
    x.ensure_square()?;
    let lam = lambda_eval(a, x)?;
    let n = lam.nrows();
    let mut l = &lam + lam.adjoint();
    for i in 0..n {
        l[(i, i)] += C64::new(1.0, 0.0);
    }
    Ok(hermitian_part(&l))
}

/// `(m + m^*) / 2`, with the lower triangle written as the exact conjugate of the upper.
pub fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.nrows();
    let mut h = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        h[(i, i)] = C64::new(m[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let v = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            h[(i, j)] = v;
            h[(j, i)] = v.conj();
        }
    }
    h
}

/// Full singular value decomposition with singular values sorted in decreasing order.
///
/// Returns `(sigma, u, v)` where `sigma` has `min(rows, cols)` entries, `u` holds the
/// matching left singular vectors as columns and `v` is the full `cols x cols` unitary
/// of right singular vectors (columns beyond `sigma.len()` span the complement).
pub fn svd_full(m: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix, ComplexMatrix) {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return (vec![], ComplexMatrix::zeros(r, 0), identity(c));
    }
    // Padding with zero rows makes the right factor square without changing sigma.
    let padded = if r < c {
        let mut p = ComplexMatrix::zeros(c, c);
        p.view_mut((0, 0), (r, c)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(true, true);
    let u_all = svd.u.expect("u requested");
    let v_all = svd.v_t.expect("v_t requested").adjoint();
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));

    let k = r.min(c);
    let sigma: Vec<f64> = order.iter().take(k).map(|&i| svd.singular_values[i]).collect();
    let mut u = ComplexMatrix::zeros(r, k);
    for (col, &i) in order.iter().take(k).enumerate() {
        u.set_column(col, &u_all.column(i).rows(0, r));
    }
    let mut v = ComplexMatrix::zeros(c, c);
    for (col, &i) in order.iter().enumerate() {
        v.set_column(col, &v_all.column(i));
    }
    (sigma, u, v)
}

/// Singular values in decreasing order.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    if m.is_empty() {
        return vec![];
    }
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Largest singular value.
pub fn operator_norm(m: &ComplexMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// `sigma_min / sigma_max` of a square matrix (0 for singular or zero matrices).
pub fn reciprocal_condition(m: &ComplexMatrix) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if hi > 0.0 => lo / hi,
        _ => 0.0,
    }
}

/// Hermitian defect `||m - m^*||_F`.
pub fn hermitian_defect(m: &ComplexMatrix) -> f64 {
    (m - m.adjoint()).norm()
}

/// Eigenvalues of a Hermitian matrix, increasing.
pub fn eigenvalues_hermitian(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    let defect = hermitian_defect(m);
    if defect > HERMITIAN_TOL * m.norm().max(1.0) {
        return Err(Error::NotHermitian { defect });
    }
    if m.is_empty() {
        return Ok(vec![]);
    }
    let h = hermitian_part(m);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    Ok(ev)
}

pub fn min_eig_hermitian(m: &ComplexMatrix) -> Result<f64> {
    Ok(eigenvalues_hermitian(m)?.first().copied().unwrap_or(f64::INFINITY))
}

/// Orthonormal basis of the numerical kernel of `m`.
pub fn kernel_basis(m: &ComplexMatrix, tol: f64) -> Vec<ComplexVector> {
    let c = m.ncols();
    let (sigma, _, v) = svd_full(m);
    let smax = sigma.first().copied().unwrap_or(0.0);
    let rank = if smax == 0.0 { 0 } else { sigma.iter().filter(|&&s| s > tol * smax).count() };
    (rank..c).map(|i| v.column(i).into_owned()).collect()
}

/// Number of singular values above `tol * sigma_max`.
pub fn numerical_rank(m: &ComplexMatrix, tol: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        Some(&smax) if smax > 0.0 => s.iter().filter(|&&x| x > tol * smax).count(),
        _ => 0,
    }
}

/// Numerical rank of a family of equal-length vectors.
pub fn vectors_rank(vectors: &[ComplexVector], tol: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    numerical_rank(&stack_columns(vectors), tol)
}

/// Matrix with the given vectors as columns.
pub fn stack_columns(vectors: &[ComplexVector]) -> ComplexMatrix {
    let n = vectors.first().map_or(0, |v| v.len());
    ComplexMatrix::from_fn(n, vectors.len(), |i, j| vectors[j][i])
}

/// Orthonormal basis of `∩_j ker(B_j)`, via the kernel of `[B_1; ...; B_g]`.
pub fn joint_kernel(b: &MatrixTuple, tol: f64) -> Result<Vec<ComplexVector>> {
    b.ensure_square()?;
    let d = b.rows();
    let mut stacked = ComplexMatrix::zeros(d * b.g(), d);
    for (j, bj) in b.iter().enumerate() {
        stacked.view_mut((j * d, 0), (d, d)).copy_from(bj);
    }
    Ok(kernel_basis(&stacked, tol))
}

/// Whether the algebra generated by `B` is nilpotent.
///
/// Tracks an orthonormal basis for the span of all words of length `k` in the
/// normalized tuple `B / max_j ||B_j||`, for `k = 1..=d`. The tuple is nilpotent iff
/// the span of length-`d` words vanishes, i.e. every length-`d` word has norm at most
/// `tol` after normalization.
pub fn is_nilpotent(b: &MatrixTuple, tol: f64) -> Result<bool> {
    b.ensure_square()?;
    let d = b.rows();
    let scale = b.iter().map(operator_norm).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(true);
    }
    let gens: Vec<ComplexMatrix> = b.iter().map(|m| m / C64::new(scale, 0.0)).collect();
    let mut words = vec![identity(d)];
    for _ in 0..d {
        let mut next: Vec<ComplexVector> = Vec::new();
        let mut next_mats: Vec<ComplexMatrix> = Vec::new();
        for w in &words {
            for bj in &gens {
                let p = bj * w;
                if let Some(q) = orthonormal_residual(&next, &flatten(&p), tol) {
                    next_mats.push(unflatten(&q, d, d));
                    next.push(q);
                }
            }
        }
        if next_mats.is_empty() {
            return Ok(true);
        }
        words = next_mats;
    }
    Ok(false)
}

/// Component of `v` orthogonal to the orthonormal family `basis`, normalized, if its
/// norm exceeds `tol`. Two Gram-Schmidt passes.
pub fn orthonormal_residual(basis: &[ComplexVector], v: &ComplexVector, tol: f64) -> Option<ComplexVector> {
    let mut r = v.clone();
    for _ in 0..2 {
        for q in basis {
            let c = q.dotc(&r);
            r -= q * c;
        }
    }
    let n = r.norm();
    (n > tol).then(|| r / C64::new(n, 0.0))
}

/// Inverse of [`flatten`]: row-major vector to `rows x cols` matrix.
pub fn unflatten(v: &ComplexVector, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |i, j| v[i * cols + j])
}

/// Solve `m x = rhs` after checking `rcond(m) >= min_rcond`.
///
/// Returns the solution together with the reciprocal condition number, or
/// `Err(rcond)` when the matrix is too close to singular.
pub fn guarded_solve(
    m: &ComplexMatrix,
    rhs: &ComplexMatrix,
    min_rcond: f64,
) -> std::result::Result<(ComplexMatrix, f64), f64> {
    let rcond = reciprocal_condition(m);
    if !(rcond >= min_rcond) {
        return Err(rcond);
    }
    m.clone().lu().solve(rhs).map(|x| (x, rcond)).ok_or(0.0)
}

/// Conjugate every entry: `U^* X U`.
pub fn unitary_conjugate(x: &MatrixTuple, u: &ComplexMatrix) -> Result<MatrixTuple> {
    x.sandwich(&u.adjoint(), u)
}

/// Block-diagonal `a ⊕ b`.
pub fn direct_sum(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut m = DMatrix::zeros(a.nrows() + b.nrows(), a.ncols() + b.ncols());
    m.view_mut((0, 0), a.shape()).copy_from(a);
    m.view_mut(a.shape(), b.shape()).copy_from(b);
    m
}
