//! The maps p and q of a set of structure constants, and the round trip between them.

use convexotonic::algebras::DEFAULT_SPAN_TOL;
use convexotonic::maps::{transfer_residual_with, ConvexotonicMap, Sign};
use convexotonic::{catalog, sampling};

fn main() -> convexotonic::Result<()> {
    let f = catalog::tuple_f();
    let q = ConvexotonicMap::from_algebra(&f, Sign::Plus, DEFAULT_SPAN_TOL)?;
    let p = q.inverse();

    let x = sampling::gaussian_tuple(&mut sampling::rng(2), 2, 3, 3).scale_real(0.1);
    let y = q.eval(&x)?;
    println!("|p(q(X)) - X| = {:.2e}", p.eval(&y)?.max_distance(&x)?);
    println!("transfer residual of q: {:.2e}", transfer_residual_with(&q, &f, &x)?);

    // On scalars q is (x1, x2 - x1^2).
    let s = convexotonic::MatrixTuple::real_scalar(&[0.5, 0.5])?;
    let qs = q.eval(&s)?;
    println!("q(0.5, 0.5) = ({:.6}, {:.6})", qs.get(0)[(0, 0)].re, qs.get(1)[(0, 0)].re);
    Ok(())
}
