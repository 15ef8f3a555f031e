#![allow(dead_code)]

use convexotonic::algebras::{algebra_closure, DEFAULT_SPAN_TOL};
use convexotonic::{catalog, sampling, MatrixTuple};

/// Algebra-spanning tuples shared by the integration tests: the four named
/// two-dimensional algebras and closures of seeded upper-triangular tuples.
pub fn corpus() -> Vec<(String, MatrixTuple)> {
    let mut out: Vec<(String, MatrixTuple)> =
        catalog::two_dimensional_algebras().into_iter().map(|(n, j)| (n.to_string(), j)).collect();
    for (seed, g, d) in [(11u64, 1usize, 2usize), (12, 2, 3), (13, 1, 3), (14, 2, 2)] {
        let a = sampling::upper_triangular_tuple(&mut sampling::rng(seed), g, d);
        let j = algebra_closure(&a, DEFAULT_SPAN_TOL).expect("closure").extended;
        out.push((format!("upper-triangular closure (seed {seed}, g {g}, d {d})"), j));
    }
    out
}

/// Frobenius radius for random points that keeps `I ± Lambda_Xi(X)` well conditioned.
pub fn safe_radius(xi: &MatrixTuple) -> f64 {
    let scale: f64 = xi.iter().map(|m| m.norm()).sum();
    0.3 / (1.0 + scale)
}
