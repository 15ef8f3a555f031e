//! Seeded random matrices, tuples and unitaries.
//!
//! Everything takes an explicit RNG so that reports reproduce bit for bit from a seed.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::tuple::{ComplexMatrix, MatrixTuple};
use crate::C64;

pub const DEFAULT_SEED: u64 = 42;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian: real and imaginary parts `N(0, 1/2)`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DVector<C64> {
    DVector::from_fn(n, |_, _| complex_gaussian(rng))
}

/// Gaussian `g`-tuple of `rows x cols` matrices.
pub fn gaussian_tuple<R: Rng + ?Sized>(rng: &mut R, g: usize, rows: usize, cols: usize) -> MatrixTuple {
    MatrixTuple::new((0..g).map(|_| gaussian_matrix(rng, rows, cols)).collect())
        .expect("gaussian tuple is well formed")
}

/// Gaussian direction at level `n`, normalized to unit Frobenius norm.
pub fn unit_direction<R: Rng + ?Sized>(rng: &mut R, g: usize, n: usize) -> MatrixTuple {
    loop {
        let t = gaussian_tuple(rng, g, n, n);
        let norm = t.norm();
        if norm > 0.0 {
            return t.scale_real(1.0 / norm);
        }
    }
}

/// Haar-distributed unitary: QR of a Gaussian matrix with the phases of `R` removed.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let qr = gaussian_matrix(rng, n, n).qr();
    let (q, r) = (qr.q(), qr.r());
    let mut u = q;
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        let mut col = u.column_mut(j);
        col *= phase;
    }
    u
}

/// Random invertible matrix with condition number at most `max_cond`: `U diag(s) V`.
pub fn well_conditioned<R: Rng + ?Sized>(rng: &mut R, n: usize, max_cond: f64) -> ComplexMatrix {
    let u = random_unitary(rng, n);
    let v = random_unitary(rng, n);
    let s = ComplexMatrix::from_diagonal(&DVector::from_fn(n, |_, _| {
        C64::new(1.0 + (max_cond - 1.0) * rng.random::<f64>(), 0.0)
    }));
    u * s * v
}

/// Random unimodular scalar.
pub fn unimodular<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let theta = rng.random::<f64>() * std::f64::consts::TAU;
    C64::new(theta.cos(), theta.sin())
}

/// Random upper-triangular `g`-tuple of `d x d` matrices.
pub fn upper_triangular_tuple<R: Rng + ?Sized>(rng: &mut R, g: usize, d: usize) -> MatrixTuple {
    let mats = (0..g)
        .map(|_| ComplexMatrix::from_fn(d, d, |i, j| if i <= j { complex_gaussian(rng) } else { C64::new(0.0, 0.0) }))
        .collect();
    MatrixTuple::new(mats).expect("well formed")
}
