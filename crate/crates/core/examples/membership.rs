//! Classify points against a spectraball and a free spectrahedron.

use convexotonic::domains::{FreeDomain, Spectraball, Spectrahedron};
use convexotonic::{catalog, MatrixTuple};

fn main() -> convexotonic::Result<()> {
    let f = catalog::tuple_f();
    let spec = Spectrahedron::new(f.clone())?;
    let ball = Spectraball::new(f);

    for point in [[0.5, 0.0], [1.0, 1.0], [2.0, 0.0]] {
        let x = MatrixTuple::real_scalar(&point)?;
        let s = spec.membership(&x, 1e-8)?;
        let b = ball.membership(&x, 1e-8)?;
        println!("{point:?}: spectrahedron {:?} ({:+.3e}), ball {:?} ({:+.3e})", s.location, s.margin, b.location, b.margin);
    }

    let dir = MatrixTuple::real_scalar(&[1.0, 1.0])?;
    println!("boundary scale along (1, 1): {:.6}", spec.boundary_scale(&dir)?);
    Ok(())
}
