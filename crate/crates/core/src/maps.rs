//! Convexotonic maps `p(x) = x (I - Lambda_Xi(x))^{-1}` and `q(x) = x (I + Lambda_Xi(x))^{-1}`,
//! realizations `c^* (I - Lambda_S(x))^{-1} b`, and the transfer identities
//! `Lambda_J(q(x)) = (I + Lambda_J(x))^{-1} Lambda_J(x)` and
//! `Lambda_J(p(x)) = (I - Lambda_J(x))^{-1} Lambda_J(x)`.
//!
//! Points are tuples of `n x n` matrices; the row `x = (X_1 ... X_g)` is the `n x gn`
//! block row and `x M^{-1}` is computed with one LU factorization of `M`.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::algebras::{self, convexotonic_residual};
use crate::domains::MIN_RCOND;
use crate::error::{Error, Result};
use crate::linalg::{self, identity, lambda_eval, operator_norm};
use crate::tuple::{ComplexMatrix, MatrixTuple};
use crate::C64;

/// Default bound on the convexotonic residual accepted at construction.
pub const DEFAULT_CONVEXOTONIC_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    /// `p(x) = x (I - Lambda_Xi(x))^{-1}`.
    Minus,
    /// `q(x) = x (I + Lambda_Xi(x))^{-1}`.
    Plus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    fn factor(self) -> f64 {
        match self {
            Sign::Minus => -1.0,
            Sign::Plus => 1.0,
        }
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minus" | "p" => Ok(Sign::Minus),
            "plus" | "q" => Ok(Sign::Plus),
            other => Err(Error::Invalid(format!("unknown sign '{other}' (expected plus or minus)"))),
        }
    }
}

/// `I ± Lambda(x)` for any coefficient tuple.
fn monic_pencil(coeffs: &MatrixTuple, x: &MatrixTuple, sign: Sign) -> Result<ComplexMatrix> {
    let lam = lambda_eval(coeffs, x)?;
    Ok(identity(lam.nrows()) + lam * C64::new(sign.factor(), 0.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexotonicMap {
    xi: MatrixTuple,
    sign: Sign,
}

impl ConvexotonicMap {
    pub fn new(xi: MatrixTuple, sign: Sign) -> Result<Self> {
        Self::with_tolerance(xi, sign, DEFAULT_CONVEXOTONIC_TOL)
    }

    /// Construct after checking that `xi` is convexotonic to within `tol`.
    pub fn with_tolerance(xi: MatrixTuple, sign: Sign, tol: f64) -> Result<Self> {
        let residual = convexotonic_residual(&xi)?;
        if residual > tol {
            return Err(Error::Invalid(format!("tuple is not convexotonic (residual {residual:e})")));
        }
        Ok(Self { xi, sign })
    }

    /// The map of the given sign built from the structure constants of an algebra-spanning `J`.
    pub fn from_algebra(j: &MatrixTuple, sign: Sign, tol: f64) -> Result<Self> {
        let sc = algebras::structure_constants(j, tol)?;
        Ok(Self { xi: sc.xi, sign })
    }

    pub fn xi(&self) -> &MatrixTuple {
        &self.xi
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn g(&self) -> usize {
        self.xi.g()
    }

    /// The inverse map: same constants, opposite sign.
    pub fn inverse(&self) -> Self {
        Self { xi: self.xi.clone(), sign: self.sign.flip() }
    }

    /// `I ∓ Lambda_Xi(X)`: minus for `p`, plus for `q`.
    pub fn pencil(&self, x: &MatrixTuple) -> Result<ComplexMatrix> {
        self.check_point(x)?;
        monic_pencil(&self.xi, x, self.sign)
    }

    /// Whether the defining pencil at `x` has reciprocal condition above `min_rcond`.
    pub fn domain_contains(&self, x: &MatrixTuple, min_rcond: f64) -> bool {
        self.pencil(x).map(|m| linalg::reciprocal_condition(&m) > min_rcond).unwrap_or(false)
    }

    /// `Y_i = sum_j X_j [M^{-1}]_{(j, i)}` with `M = I ∓ Lambda_Xi(X)`.
    pub fn eval(&self, x: &MatrixTuple) -> Result<MatrixTuple> {
        let m = self.pencil(x)?;
        let n = x.rows();
        let g = self.g();
        // Row form: y = x M^{-1}  <=>  M^T y^T = x^T.
        let mut row = ComplexMatrix::zeros(n, g * n);
        for (j, xj) in x.iter().enumerate() {
            row.view_mut((0, j * n), (n, n)).copy_from(xj);
        }
        let (yt, _) = linalg::guarded_solve(&m.transpose(), &row.transpose(), MIN_RCOND)
            .map_err(|rcond| Error::DomainBreach { rcond })?;
        let y = yt.transpose();
        MatrixTuple::new((0..g).map(|i| y.columns(i * n, n).into_owned()).collect())
    }

    fn check_point(&self, x: &MatrixTuple) -> Result<()> {
        if x.g() != self.g() {
            return Err(Error::TupleLengthMismatch { expected: self.g(), found: x.g() });
        }
        x.ensure_square()
    }
}

/// Inverse of a map, as an operation.
pub fn inverse_map(map: &ConvexotonicMap) -> ConvexotonicMap {
    map.inverse()
}

pub fn eval_map(map: &ConvexotonicMap, x: &MatrixTuple) -> Result<MatrixTuple> {
    map.eval(x)
}

/// Whether `I ∓ Lambda_Xi(X)` has condition number below `1 / min_rcond`.
pub fn map_domain_check(map: &ConvexotonicMap, x: &MatrixTuple, min_rcond: f64) -> bool {
    map.domain_contains(x, min_rcond)
}

/// Free rational function `r(x) = c^* (I - Lambda_S(x))^{-1} b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    s: MatrixTuple,
    b: DVector<C64>,
    c: DVector<C64>,
}

impl Realization {
    pub fn new(s: MatrixTuple, b: DVector<C64>, c: DVector<C64>) -> Result<Self> {
        s.ensure_square()?;
        if b.len() != s.rows() || c.len() != s.rows() {
            return Err(Error::ShapeMismatch(format!(
                "realization of size {} needs vectors of length {}, found {} and {}",
                s.rows(),
                s.rows(),
                b.len(),
                c.len()
            )));
        }
        Ok(Self { s, b, c })
    }

    /// Realization of the `(s, i)` entry `e_s^* (I - Lambda_Xi(x))^{-1} e_i` of the resolvent.
    pub fn resolvent_entry(xi: &MatrixTuple, s: usize, i: usize) -> Result<Self> {
        let g = xi.rows();
        let mut b = DVector::zeros(g);
        let mut c = DVector::zeros(g);
        b[i] = C64::new(1.0, 0.0);
        c[s] = C64::new(1.0, 0.0);
        Self::new(xi.clone(), b, c)
    }

    /// `(c^* ⊗ I_n) (I - Lambda_S(X))^{-1} (b ⊗ I_n)`.
    pub fn eval(&self, x: &MatrixTuple) -> Result<ComplexMatrix> {
        if x.g() != self.s.g() {
            return Err(Error::TupleLengthMismatch { expected: self.s.g(), found: x.g() });
        }
        x.ensure_square()?;
        let n = x.rows();
        let m = monic_pencil(&self.s, x, Sign::Minus)?;
        let b_col = ComplexMatrix::from_column_slice(self.b.len(), 1, self.b.as_slice());
        let c_row = ComplexMatrix::from_row_slice(1, self.c.len(), self.c.adjoint().as_slice());
        let rhs = linalg::kron(&b_col, &identity(n));
        let (sol, _) = linalg::guarded_solve(&m, &rhs, MIN_RCOND).map_err(|rcond| Error::DomainBreach { rcond })?;
        Ok(linalg::kron(&c_row, &identity(n)) * sol)
    }
}

pub fn eval_realization(r: &Realization, x: &MatrixTuple) -> Result<ComplexMatrix> {
    r.eval(x)
}

/// `||Lambda_J(m(X)) - (I ± Lambda_J(X))^{-1} Lambda_J(X)||` where `m` is the map of the
/// given sign built from the structure constants of `J`.
pub fn transfer_residual(j: &MatrixTuple, x: &MatrixTuple, sign: Sign, span_tol: f64) -> Result<f64> {
    let map = ConvexotonicMap::from_algebra(j, sign, span_tol)?;
    transfer_residual_with(&map, j, x)
}

/// [`transfer_residual`] with precomputed constants.
pub fn transfer_residual_with(map: &ConvexotonicMap, j: &MatrixTuple, x: &MatrixTuple) -> Result<f64> {
    let image = map.eval(x)?;
    let lhs = lambda_eval(j, &image)?;
    let lam = lambda_eval(j, x)?;
    let pencil = monic_pencil(j, x, map.sign())?;
    let (rhs, _) = linalg::guarded_solve(&pencil, &lam, MIN_RCOND).map_err(|rcond| Error::DomainBreach { rcond })?;
    Ok(operator_norm(&(lhs - rhs)))
}
