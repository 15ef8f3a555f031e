//! Named coefficient tuples used throughout the examples and tests.

use crate::tuple::{ComplexMatrix, MatrixTuple};
use crate::C64;

fn real(rows: usize, cols: usize, entries: &[&[f64]]) -> MatrixTuple {
    MatrixTuple::from_real(rows, cols, entries).expect("static tuple is well formed")
}

/// `E = (I_2, e_12)`: spans the two-dimensional "type IV" algebra; sv-generic.
pub fn tuple_e() -> MatrixTuple {
    real(2, 2, &[&[1., 0., 0., 1.], &[0., 1., 0., 0.]])
}

/// `F = (F_1, F_1^2)` with `F_1` the 3x3 upper shift; nilpotent ("type I").
pub fn tuple_f() -> MatrixTuple {
    real(3, 3, &[&[0., 1., 0., 0., 0., 1., 0., 0., 0.], &[0., 0., 1., 0., 0., 0., 0., 0., 0.]])
}

/// Type II algebra: `(e_11, e_12)`.
pub fn type_ii() -> MatrixTuple {
    real(2, 2, &[&[1., 0., 0., 0.], &[0., 1., 0., 0.]])
}

/// Type III algebra: `(e_11, e_21)`.
pub fn type_iii() -> MatrixTuple {
    real(2, 2, &[&[1., 0., 0., 0.], &[0., 0., 1., 0.]])
}

/// Type IV algebra: `E` itself.
pub fn type_iv() -> MatrixTuple {
    tuple_e()
}

/// Structure constants of `F`: `(e_12, 0)` in `M_2`.
pub fn xi_type_i() -> MatrixTuple {
    real(2, 2, &[&[0., 1., 0., 0.], &[0., 0., 0., 0.]])
}

/// `alpha * E`, the constants of the maps `f` from the ball of `E`.
pub fn xi_scaled_e(alpha: C64) -> MatrixTuple {
    tuple_e().scale(alpha)
}

/// `(alpha I_2 + E_2, alpha E_2)`, the constants of the composed map `f ∘ q`.
pub fn xi_composed(alpha: C64) -> MatrixTuple {
    let e = tuple_e();
    let e2 = e.get(1);
    MatrixTuple::new(vec![e.get(0) * alpha + e2, e2 * alpha]).expect("well formed")
}

/// Rotation generator `[[0, -1], [1, 0]]`, a skew-adjoint 2x2 matrix.
pub fn rotation_generator() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(
        2,
        2,
        &[C64::new(0., 0.), C64::new(-1., 0.), C64::new(1., 0.), C64::new(0., 0.)],
    )
}

/// The 2x2 swap `e_12 + e_21`.
pub fn swap() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(
        2,
        2,
        &[C64::new(0., 0.), C64::new(1., 0.), C64::new(1., 0.), C64::new(0., 0.)],
    )
}

/// The four indecomposable two-dimensional algebras with their names.
pub fn two_dimensional_algebras() -> Vec<(&'static str, MatrixTuple)> {
    vec![
        ("type I", tuple_f()),
        ("type II", type_ii()),
        ("type III", type_iii()),
        ("type IV", type_iv()),
    ]
}
