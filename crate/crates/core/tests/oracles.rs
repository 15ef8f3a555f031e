//! Library results against slow, independent reference computations.

mod common;

use convexotonic::algebras::{structure_constants, DEFAULT_SPAN_TOL};
use convexotonic::domains::{FreeDomain, Spectraball, Spectrahedron};
use convexotonic::linalg::{self, identity, kron, lambda_eval, min_eig_hermitian, operator_norm};
use convexotonic::maps::{ConvexotonicMap, Sign};
use convexotonic::sampling::{self, SeededRng};
use convexotonic::{catalog, ComplexMatrix, MatrixTuple, C64};
use nalgebra::DMatrix;

fn rng(seed: u64) -> SeededRng {
    sampling::rng(seed)
}

/// Every word of length `len` in the tuple.
fn words(t: &MatrixTuple, len: usize) -> Vec<ComplexMatrix> {
    let mut out = vec![identity(t.rows())];
    for _ in 0..len {
        out = out.iter().flat_map(|w| t.iter().map(move |m| w * m)).collect();
    }
    out
}

/// A tuple is jointly nilpotent iff every word of length d vanishes.
fn nilpotent_by_words(t: &MatrixTuple) -> bool {
    let scale = t.iter().map(operator_norm).fold(0.0, f64::max).max(1.0);
    words(&t.scale_real(1.0 / scale), t.rows()).iter().all(|w| w.norm() < 1e-10)
}

fn strictly_upper(seed: u64, g: usize, d: usize) -> MatrixTuple {
    let mut r = rng(seed);
    let mats = (0..g)
        .map(|_| {
            let m = sampling::gaussian_matrix(&mut r, d, d);
            ComplexMatrix::from_fn(d, d, |i, j| if j > i { m[(i, j)] } else { C64::new(0.0, 0.0) })
        })
        .collect();
    MatrixTuple::new(mats).unwrap()
}

#[test]
fn nilpotency_matches_word_enumeration() {
    for seed in 0..20u64 {
        let d = 1 + (seed as usize) % 4;
        let g = 1 + (seed as usize) % 3;
        let nil = strictly_upper(seed, g, d);
        assert!(nilpotent_by_words(&nil));
        assert_eq!(linalg::is_nilpotent(&nil, 1e-10).unwrap(), true, "seed {seed}");

        let generic = sampling::gaussian_tuple(&mut rng(seed), g, d, d);
        assert!(!nilpotent_by_words(&generic));
        assert_eq!(linalg::is_nilpotent(&generic, 1e-10).unwrap(), false, "seed {seed}");
    }
    for (name, j) in catalog::two_dimensional_algebras() {
        assert_eq!(linalg::is_nilpotent(&j, 1e-10).unwrap(), nilpotent_by_words(&j), "{name}");
    }
}

/// Least squares through the normal equations of the Frobenius Gram matrix.
fn constants_by_normal_equations(j: &MatrixTuple) -> MatrixTuple {
    let n = j.g();
    let inner = |a: &ComplexMatrix, b: &ComplexMatrix| a.dotc(b);
    let gram = DMatrix::from_fn(n, n, |s, t| inner(j.get(s), j.get(t)));
    let lu = gram.lu();
    let mats = (0..n)
        .map(|jj| {
            let mut xi = ComplexMatrix::zeros(n, n);
            for k in 0..n {
                let prod = j.get(k) * j.get(jj);
                let rhs = DMatrix::from_fn(n, 1, |s, _| inner(j.get(s), &prod));
                let coef = lu.solve(&rhs).unwrap();
                for s in 0..n {
                    xi[(k, s)] = coef[(s, 0)];
                }
            }
            xi
        })
        .collect();
    MatrixTuple::new(mats).unwrap()
}

#[test]
fn structure_constants_match_normal_equations() {
    for (name, j) in common::corpus() {
        let xi = structure_constants(&j, DEFAULT_SPAN_TOL).unwrap().xi;
        let reference = constants_by_normal_equations(&j);
        assert!(xi.max_distance(&reference).unwrap() < 1e-9, "{name}");
        // The defining product law, checked entrywise.
        for k in 0..j.g() {
            for jj in 0..j.g() {
                let mut rebuilt = ComplexMatrix::zeros(j.rows(), j.rows());
                for s in 0..j.g() {
                    rebuilt += j.get(s) * xi.get(jj)[(k, s)];
                }
                assert!((rebuilt - j.get(k) * j.get(jj)).norm() < 1e-10, "{name}");
            }
        }
    }
}

/// Power iteration on M*M, many steps from a fixed start.
fn norm_by_power_iteration(m: &ComplexMatrix) -> f64 {
    let mut r = rng(99);
    let gram = m.adjoint() * m;
    let mut v = sampling::gaussian_vector(&mut r, m.ncols());
    for _ in 0..5000 {
        let w = &gram * &v;
        let len = w.norm();
        if len == 0.0 {
            return 0.0;
        }
        v = w / C64::new(len, 0.0);
    }
    (m * &v).norm()
}

#[test]
fn operator_norm_matches_power_iteration() {
    for seed in 0..15u64 {
        let n = 1 + (seed as usize) % 5;
        let m = sampling::gaussian_matrix(&mut rng(seed), n, n + 1);
        let svd = operator_norm(&m);
        assert!((svd - norm_by_power_iteration(&m)).abs() < 1e-8 * svd, "seed {seed}");
    }
}

#[test]
fn kron_and_pencil_match_explicit_loops() {
    let mut r = rng(5);
    let a = sampling::gaussian_tuple(&mut r, 2, 2, 3);
    let x = sampling::gaussian_tuple(&mut r, 2, 3, 2);
    let k = kron(a.get(0), x.get(0));
    for i in 0..2 {
        for j in 0..3 {
            for p in 0..3 {
                for q in 0..2 {
                    assert_eq!(k[(i * 3 + p, j * 2 + q)], a.get(0)[(i, j)] * x.get(0)[(p, q)]);
                }
            }
        }
    }
    let lam = lambda_eval(&a, &x).unwrap();
    let explicit = ComplexMatrix::from_fn(6, 6, |row, col| {
        (0..2).map(|s| a.get(s)[(row / 3, col / 2)] * x.get(s)[(row % 3, col % 2)]).sum()
    });
    assert!((lam - explicit).norm() < 1e-14);
}

#[test]
fn min_eig_matches_two_by_two_formula() {
    for seed in 0..20u64 {
        let m = sampling::gaussian_matrix(&mut rng(seed), 2, 2);
        let h = linalg::hermitian_part(&m);
        let (a, d, b) = (h[(0, 0)].re, h[(1, 1)].re, h[(0, 1)].norm());
        let formula = (a + d) / 2.0 - (((a - d) / 2.0).powi(2) + b * b).sqrt();
        assert!((min_eig_hermitian(&h).unwrap() - formula).abs() < 1e-12);
    }
}

#[test]
fn ball_boundary_scale_is_reciprocal_norm() {
    for seed in 0..10u64 {
        let mut r = rng(seed);
        let ball = Spectraball::new(sampling::gaussian_tuple(&mut r, 2, 2, 3));
        let x = sampling::unit_direction(&mut r, 2, 2);
        let want = 1.0 / operator_norm(&lambda_eval(ball.tuple(), &x).unwrap());
        assert!((ball.boundary_scale(&x).unwrap() - want).abs() < 1e-9 * want);
    }
}

#[test]
fn spectrahedron_boundary_scale_matches_bisection() {
    for seed in 0..10u64 {
        let mut r = rng(seed);
        let spec = Spectrahedron::new(sampling::gaussian_tuple(&mut r, 2, 3, 3)).unwrap();
        let x = sampling::unit_direction(&mut r, 2, 2);
        let t = spec.boundary_scale(&x).unwrap();
        if !t.is_finite() {
            continue;
        }
        let inside = |s: f64| spec.margin(&x.scale_real(s)).unwrap() >= 0.0;
        let (mut lo, mut hi) = (0.0, 1.0);
        while inside(hi) {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if inside(mid) {
                lo = mid
            } else {
                hi = mid
            }
        }
        assert!((t - lo).abs() < 1e-8 * (1.0 + t), "seed {seed}: {t} vs {lo}");
    }
}

#[test]
fn maps_have_identity_derivative_and_quadratic_correction() {
    for (name, j) in common::corpus() {
        let xi = structure_constants(&j, DEFAULT_SPAN_TOL).unwrap().xi;
        let h = sampling::unit_direction(&mut rng(3), j.g(), 2);
        let quad = lambda_eval(&xi, &h).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let map = ConvexotonicMap::new(xi.clone(), sign).unwrap();
            let step = 1e-4;
            let fwd = map.eval(&h.scale_real(step)).unwrap();
            let bwd = map.eval(&h.scale_real(-step)).unwrap();
            // Central difference gives the derivative at 0.
            let deriv = fwd.sub(&bwd).unwrap().scale_real(0.5 / step);
            assert!(deriv.max_distance(&h).unwrap() < 1e-6, "{name}");
            // Second difference gives the quadratic term -/+ h Lambda_Xi(h).
            let second = fwd.add(&bwd).unwrap().scale_real(1.0 / (step * step));
            let s = if sign == Sign::Plus { -2.0 } else { 2.0 };
            let want = MatrixTuple::new((0..j.g()).map(|k| slot_of_product(&h, &quad, k) * C64::new(s, 0.0)).collect()).unwrap();
            assert!(second.max_distance(&want).unwrap() < 1e-4, "{name} {sign:?}");
        }
    }
}

/// Slot `k` of the row tuple `h` times the block matrix `m`, where `h` is read as the row [h_1 ... h_g].
fn slot_of_product(h: &MatrixTuple, m: &ComplexMatrix, k: usize) -> ComplexMatrix {
    let n = h.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for s in 0..h.g() {
        out += h.get(s) * m.view((s * n, k * n), (n, n));
    }
    out
}
