//! Evaluate a linear pencil and its Hermitian form at a matrix point.

use convexotonic::linalg::{hermitian_pencil, lambda_eval, min_eig_hermitian, operator_norm};
use convexotonic::{catalog, sampling};

fn main() -> convexotonic::Result<()> {
    let e = catalog::tuple_e();
    let x = sampling::gaussian_tuple(&mut sampling::rng(1), e.g(), 2, 2).scale_real(0.2);

    let lam = lambda_eval(&e, &x)?;
    println!("Lambda_E(X) is {}x{}, norm {:.6}", lam.nrows(), lam.ncols(), operator_norm(&lam));

    let l = hermitian_pencil(&e, &x)?;
    println!("lambda_min(I + Lambda + Lambda*) = {:.6}", min_eig_hermitian(&l)?);
    Ok(())
}
