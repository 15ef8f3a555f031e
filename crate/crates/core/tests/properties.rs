mod common;

use convexotonic::algebras::{algebra_closure, structure_constants, DEFAULT_SPAN_TOL};
use convexotonic::domains::{
    ball_membership, ball_to_spectrahedron, contraction_membership, spec_membership, FreeDomain, Location, Spectraball,
    Spectrahedron,
};
use convexotonic::genericity::{sv_probe, ProbeOptions, ProbeOutcome};
use convexotonic::linalg::{self, hermitian_pencil, identity, kron, lambda_eval, min_eig_hermitian, operator_norm};
use convexotonic::maps::{transfer_residual_with, ConvexotonicMap, Sign};
use convexotonic::sampling::{self, SeededRng};
use convexotonic::verify::{self, TheoremData, DEFAULT_VERIFY_TOL};
use convexotonic::{catalog, wire, MatrixTuple, C64};
use proptest::prelude::*;

fn rng(seed: u64) -> SeededRng {
    sampling::rng(seed)
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

/// A seeded algebra from the upper-triangular family with its constants.
fn triangular_algebra(seed: u64, g: usize, d: usize) -> MatrixTuple {
    let a = sampling::upper_triangular_tuple(&mut rng(seed), g.min(d * (d + 1) / 2), d);
    algebra_closure(&a, DEFAULT_SPAN_TOL).unwrap().extended
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn kron_is_bilinear(seed: u64, n in 1usize..4, m in 1usize..4) {
        let mut r = rng(seed);
        let a = sampling::gaussian_matrix(&mut r, n, n);
        let b = sampling::gaussian_matrix(&mut r, n, n);
        let c = sampling::gaussian_matrix(&mut r, m, m);
        let lhs = kron(&(&a + &b), &c);
        let rhs = kron(&a, &c) + kron(&b, &c);
        prop_assert!((lhs - rhs).norm() < 1e-13);
    }

    #[test]
    fn lambda_is_linear_in_both_arguments(seed: u64, g in 1usize..4, d in 1usize..4, n in 1usize..4) {
        let mut r = rng(seed);
        let a = sampling::gaussian_tuple(&mut r, g, d, d);
        let b = sampling::gaussian_tuple(&mut r, g, d, d);
        let x = sampling::gaussian_tuple(&mut r, g, n, n);
        let y = sampling::gaussian_tuple(&mut r, g, n, n);
        let s = sampling::complex_gaussian(&mut r);
        let lhs = lambda_eval(&a, &x.scale(s).add(&y).unwrap()).unwrap();
        let rhs = lambda_eval(&a, &x).unwrap() * s + lambda_eval(&a, &y).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12);
        let lhs = lambda_eval(&a.add(&b).unwrap(), &x).unwrap();
        let rhs = lambda_eval(&a, &x).unwrap() + lambda_eval(&b, &x).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn hermitian_pencil_is_bitwise_hermitian(seed: u64, g in 1usize..4, d in 1usize..4, n in 1usize..4) {
        let mut r = rng(seed);
        let a = sampling::gaussian_tuple(&mut r, g, d, d);
        let x = sampling::gaussian_tuple(&mut r, g, n, n);
        let l = hermitian_pencil(&a, &x).unwrap();
        prop_assert_eq!(l.adjoint(), l);
    }

    #[test]
    fn norms_and_eigenvalues_are_unitarily_invariant(seed: u64, g in 1usize..3, d in 1usize..4, n in 1usize..4) {
        let mut r = rng(seed);
        let a = sampling::gaussian_tuple(&mut r, g, d, d);
        let x = sampling::gaussian_tuple(&mut r, g, n, n);
        let u = sampling::random_unitary(&mut r, n);
        let xu = linalg::unitary_conjugate(&x, &u).unwrap();
        let n0 = operator_norm(&lambda_eval(&a, &x).unwrap());
        let n1 = operator_norm(&lambda_eval(&a, &xu).unwrap());
        prop_assert!((n0 - n1).abs() < 1e-10 * (1.0 + n0));
        let e0 = min_eig_hermitian(&hermitian_pencil(&a, &x).unwrap()).unwrap();
        let e1 = min_eig_hermitian(&hermitian_pencil(&a, &xu).unwrap()).unwrap();
        prop_assert!((e0 - e1).abs() < 1e-10 * (1.0 + e0.abs()));
    }

    #[test]
    fn operator_norm_of_direct_sum_is_max(seed: u64, g in 1usize..3, d in 1usize..4, n in 1usize..3, m in 1usize..3) {
        let mut r = rng(seed);
        let a = sampling::gaussian_tuple(&mut r, g, d, d);
        let x = sampling::gaussian_tuple(&mut r, g, n, n);
        let y = sampling::gaussian_tuple(&mut r, g, m, m);
        let whole = operator_norm(&lambda_eval(&a, &x.direct_sum(&y).unwrap()).unwrap());
        let parts = operator_norm(&lambda_eval(&a, &x).unwrap()).max(operator_norm(&lambda_eval(&a, &y).unwrap()));
        prop_assert!((whole - parts).abs() < 1e-12 * (1.0 + parts));
    }

    #[test]
    fn membership_is_unitarily_invariant(seed: u64, g in 1usize..3, d in 1usize..4, n in 1usize..4) {
        let mut r = rng(seed);
        let a = sampling::gaussian_tuple(&mut r, g, d, d);
        let x = sampling::gaussian_tuple(&mut r, g, n, n).scale_real(0.3);
        let u = sampling::random_unitary(&mut r, n);
        let xu = linalg::unitary_conjugate(&x, &u).unwrap();
        let ball = Spectraball::new(a.clone());
        let spec = Spectrahedron::new(a).unwrap();
        prop_assert!((ball.margin(&x).unwrap() - ball.margin(&xu).unwrap()).abs() < 1e-10);
        prop_assert!((spec.margin(&x).unwrap() - spec.margin(&xu).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn margin_of_direct_sum_is_min(seed: u64, g in 1usize..3, d in 1usize..4, n in 1usize..3, m in 1usize..3) {
        let mut r = rng(seed);
        let a = sampling::gaussian_tuple(&mut r, g, d, d);
        let x = sampling::gaussian_tuple(&mut r, g, n, n).scale_real(0.3);
        let y = sampling::gaussian_tuple(&mut r, g, m, m).scale_real(0.3);
        let xy = x.direct_sum(&y).unwrap();
        let ball = Spectraball::new(a.clone());
        let spec = Spectrahedron::new(a).unwrap();
        for dom in [&ball as &dyn FreeDomain, &spec as &dyn FreeDomain] {
            let want = dom.margin(&x).unwrap().min(dom.margin(&y).unwrap());
            prop_assert!((dom.margin(&xy).unwrap() - want).abs() < 1e-10);
        }
    }

    #[test]
    fn ball_and_embedded_spectrahedron_agree(seed: u64, g in 1usize..3, d in 1usize..3, e in 1usize..3, n in 1usize..4) {
        let mut r = rng(seed);
        let ball = Spectraball::new(sampling::gaussian_tuple(&mut r, g, d, e));
        let spec = ball_to_spectrahedron(&ball);
        let x = sampling::gaussian_tuple(&mut r, g, n, n).scale_real(0.5);
        let v = ball_membership(&ball, &x, 1e-8).unwrap();
        let w = spec_membership(&spec, &x, 1e-8).unwrap();
        prop_assert_eq!(v.location, w.location);
        prop_assert!((v.margin - w.margin).abs() < 1e-10);
    }

    #[test]
    fn boundary_scale_lands_on_the_boundary(seed: u64, g in 1usize..3, d in 1usize..4, n in 1usize..4) {
        let mut r = rng(seed);
        let a = sampling::gaussian_tuple(&mut r, g, d, d);
        let dir = sampling::unit_direction(&mut r, g, n);
        for dom in [&Spectraball::new(a.clone()) as &dyn FreeDomain, &Spectrahedron::new(a).unwrap() as &dyn FreeDomain] {
            let t = dom.boundary_scale(&dir).unwrap();
            if t.is_finite() {
                prop_assert_eq!(dom.membership(&dir.scale_real(t), 1e-8).unwrap().location, Location::Boundary);
                prop_assert_eq!(dom.membership(&dir.scale_real(t * (1.0 + 1e-6)), 1e-12).unwrap().location, Location::Exterior);
            }
        }
    }

    #[test]
    fn contraction_test_matches_spectrahedron_sign(seed: u64, g in 1usize..3, d in 1usize..4, n in 1usize..3) {
        let mut r = rng(seed);
        let a = sampling::gaussian_tuple(&mut r, g, d, d);
        let spec = Spectrahedron::new(a).unwrap();
        let x = sampling::gaussian_tuple(&mut r, g, n, n).scale_real(0.4);
        let direct = spec.margin(&x).unwrap();
        prop_assume!(direct.abs() > 1e-6);
        if let Ok(v) = contraction_membership(&spec, &x, 0.0) {
            prop_assert_eq!(v.margin > 0.0, direct > 0.0);
        }
    }
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn pipeline_residuals_on_triangular_algebras(seed: u64, g in 1usize..5, d in 1usize..6) {
        let j = triangular_algebra(seed, g, d);
        let sc = structure_constants(&j, DEFAULT_SPAN_TOL).unwrap();
        prop_assert!(sc.relative_residual < 1e-10);
        prop_assert!(sc.convexotonic_residual < 1e-9);
    }

    #[test]
    fn constants_are_unique_under_basis_permutation(seed: u64, g in 1usize..4, d in 2usize..5) {
        let j = triangular_algebra(seed, g, d);
        let n = j.g();
        // A cyclic shift by a seed-dependent offset.
        let shift = (seed as usize) % n;
        let perm: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
        let permuted = MatrixTuple::new(perm.iter().map(|&i| j.get(i).clone()).collect()).unwrap();
        let xi = structure_constants(&j, DEFAULT_SPAN_TOL).unwrap().xi;
        let xi_p = structure_constants(&permuted, DEFAULT_SPAN_TOL).unwrap().xi;
        // Permuted constants: Xi'_j[k, t] = Xi_{perm j}[perm k, perm t].
        for jj in 0..n {
            for k in 0..n {
                for t in 0..n {
                    let diff = xi_p.get(jj)[(k, t)] - xi.get(perm[jj])[(perm[k], perm[t])];
                    prop_assert!(diff.norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn closure_is_idempotent_and_bounded(seed: u64, g in 1usize..4, d in 1usize..5) {
        let a = sampling::upper_triangular_tuple(&mut rng(seed), g.min(d * (d + 1) / 2), d);
        let cl = algebra_closure(&a, DEFAULT_SPAN_TOL).unwrap();
        prop_assert!(cl.extended.g() <= d * d);
        prop_assert_eq!(&cl.extended.as_slice()[..a.g()], a.as_slice());
        let again = algebra_closure(&cl.extended, DEFAULT_SPAN_TOL).unwrap();
        prop_assert_eq!(again.appended_count, 0);
    }

    #[test]
    fn constants_are_similarity_covariant(seed: u64, g in 1usize..4, d in 2usize..5) {
        let j = triangular_algebra(seed, g, d);
        let mut r = rng(seed ^ 0x5eed);
        let s = sampling::well_conditioned(&mut r, d, 4.0);
        let s_inv = s.clone().try_inverse().unwrap();
        let xi = structure_constants(&j, DEFAULT_SPAN_TOL).unwrap().xi;
        let xi_s = structure_constants(&j.sandwich(&s_inv, &s).unwrap(), DEFAULT_SPAN_TOL).unwrap().xi;
        prop_assert!(xi.max_distance(&xi_s).unwrap() < 1e-8);
    }

    #[test]
    fn maps_respect_direct_sums_and_similarity(seed: u64, g in 1usize..4, d in 1usize..5, n in 1usize..3, minus: bool) {
        let j = triangular_algebra(seed, g, d);
        let sign = if minus { Sign::Minus } else { Sign::Plus };
        let map = ConvexotonicMap::from_algebra(&j, sign, DEFAULT_SPAN_TOL).unwrap();
        let rad = common::safe_radius(map.xi());
        let mut r = rng(seed.wrapping_add(1));
        let x = sampling::unit_direction(&mut r, j.g(), n).scale_real(rad);
        let y = sampling::unit_direction(&mut r, j.g(), 2).scale_real(rad);
        let whole = map.eval(&x.direct_sum(&y).unwrap()).unwrap();
        let parts = map.eval(&x).unwrap().direct_sum(&map.eval(&y).unwrap()).unwrap();
        prop_assert!(whole.max_distance(&parts).unwrap() < 1e-9);

        let s = sampling::well_conditioned(&mut r, n, 3.0);
        let s_inv = s.clone().try_inverse().unwrap();
        let xs = x.scale_real(1.0 / 3.0);
        let lhs = map.eval(&xs.sandwich(&s_inv, &s).unwrap()).unwrap();
        let rhs = map.eval(&xs).unwrap().sandwich(&s_inv, &s).unwrap();
        prop_assert!(lhs.max_distance(&rhs).unwrap() < 1e-9);
    }

    #[test]
    fn inverse_law_and_transfer_identity(seed: u64, g in 1usize..5, d in 1usize..6, n in 1usize..5) {
        let j = triangular_algebra(seed, g, d);
        let q = ConvexotonicMap::from_algebra(&j, Sign::Plus, DEFAULT_SPAN_TOL).unwrap();
        let p = q.inverse();
        let x = sampling::unit_direction(&mut rng(seed.wrapping_add(2)), j.g(), n).scale_real(common::safe_radius(q.xi()));
        prop_assert!(p.eval(&q.eval(&x).unwrap()).unwrap().max_distance(&x).unwrap() < 1e-9);
        prop_assert!(q.eval(&p.eval(&x).unwrap()).unwrap().max_distance(&x).unwrap() < 1e-9);
        prop_assert!(transfer_residual_with(&q, &j, &x).unwrap() < 1e-9);
        prop_assert!(transfer_residual_with(&p, &j, &x).unwrap() < 1e-9);
        let zero = MatrixTuple::zeros(j.g(), n, n).unwrap();
        prop_assert_eq!(q.eval(&zero).unwrap().max_norm(), 0.0);
    }

    #[test]
    fn q_transports_boundary_to_boundary(seed: u64, which in 0usize..4, n in 1usize..4) {
        let (_, j) = catalog::two_dimensional_algebras().swap_remove(which);
        let q = ConvexotonicMap::from_algebra(&j, Sign::Plus, DEFAULT_SPAN_TOL).unwrap();
        let spec = Spectrahedron::new(j.clone()).unwrap();
        let dir = sampling::unit_direction(&mut rng(seed), 2, n);
        let t = spec.boundary_scale(&dir).unwrap();
        prop_assume!(t.is_finite());
        let on = operator_norm(&lambda_eval(&j, &q.eval(&dir.scale_real(t)).unwrap()).unwrap());
        prop_assert!((on - 1.0).abs() < 1e-7);
        let inside = operator_norm(&lambda_eval(&j, &q.eval(&dir.scale_real(0.9 * t)).unwrap()).unwrap());
        prop_assert!(inside < 1.0);
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn certificates_revalidate(seed: u64, g in 2usize..4, d in 1usize..4) {
        let a = sampling::gaussian_tuple(&mut rng(seed), g, d, d);
        let opts = ProbeOptions { trials: 2000, seed, ..ProbeOptions::default() };
        let first = sv_probe(&a, &opts).unwrap();
        prop_assert_eq!(&first, &sv_probe(&a, &opts).unwrap());
        if let ProbeOutcome::Certified(cert) = first {
            let check = cert.revalidate(&a, &opts).unwrap();
            prop_assert!(check.valid, "{:?}", check);
            prop_assert!(check.max_scale_error <= 1e-10);
        }
    }

    #[test]
    fn theorem_data_implies_ball_equality(seed: u64) {
        let mut r = rng(seed);
        let e = catalog::tuple_e();
        let alpha = sampling::unimodular(&mut r);
        let m = sampling::random_unitary(&mut r, 2);
        let z = identity(2) * alpha;
        let b = e.sandwich(&(m.adjoint() * &z), &m).unwrap();
        let data = TheoremData::new(e.clone(), b.clone(), z, m, 1e-10).unwrap();
        let report = verify::verify_theorem_main(&data, 20, seed, DEFAULT_VERIFY_TOL).unwrap();
        prop_assert!(report.passed, "{:#?}", report);
        prop_assert!(verify::verify_ball_equality(&e, &b, 20, seed).unwrap().passed);
    }

    #[test]
    fn corollary_gaps_are_positive(seed: u64, d in 2usize..4) {
        let a = sampling::upper_triangular_tuple(&mut rng(seed), 1, d);
        let report = verify::verify_corollary(&a, 12, seed, DEFAULT_VERIFY_TOL).unwrap();
        let inj = report.check("injective on samples").unwrap();
        prop_assert!(inj.residual.unwrap() > 0.0);
    }

    #[test]
    fn reports_are_reproducible(seed: u64) {
        let j = catalog::type_iv();
        prop_assert_eq!(
            verify::verify_properness(&j, 9, seed, DEFAULT_VERIFY_TOL).unwrap(),
            verify::verify_properness(&j, 9, seed, DEFAULT_VERIFY_TOL).unwrap()
        );
    }
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<f64>().prop_filter("finite", |v| v.is_finite()),
        Just(0.0),
        Just(-0.0),
        Just(f64::MIN_POSITIVE / 8.0),
        Just(f64::MAX),
    ]
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn json_round_trip_is_bit_exact(
        g in 1usize..4, rows in 1usize..4, cols in 1usize..4,
        raw in proptest::collection::vec((finite(), finite()), 27..=27),
    ) {
        let mats = (0..g)
            .map(|k| convexotonic::ComplexMatrix::from_fn(rows, cols, |r, c| {
                let (re, im) = raw[(k * 9 + r * 3 + c) % raw.len()];
                C64::new(re, im)
            }))
            .collect();
        let t = MatrixTuple::new(mats).unwrap();
        let back = wire::parse_tuple(&wire::to_json(&t)).unwrap();
        for (a, b) in t.iter().zip(back.iter()) {
            for (x, y) in a.iter().zip(b.iter()) {
                prop_assert_eq!(x.re.to_bits(), y.re.to_bits());
                prop_assert_eq!(x.im.to_bits(), y.im.to_bits());
            }
        }
    }
}
