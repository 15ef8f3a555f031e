//! Check the classification conclusions on unitarily equivalent data.

use convexotonic::linalg::identity;
use convexotonic::verify::{verify_ball_equality, verify_theorem_main, TheoremData, DEFAULT_VERIFY_TOL};
use convexotonic::{catalog, sampling};

fn main() -> convexotonic::Result<()> {
    let mut rng = sampling::rng(3);
    let e = catalog::tuple_e();
    let alpha = sampling::unimodular(&mut rng);
    let m = sampling::random_unitary(&mut rng, 2);
    let z = identity(2) * alpha;
    let b = e.sandwich(&(m.adjoint() * &z), &m)?;

    let data = TheoremData::new(e.clone(), b.clone(), z, m, 1e-10)?;
    let report = verify_theorem_main(&data, 50, 3, DEFAULT_VERIFY_TOL)?;
    for check in &report.checks {
        println!("{:<40} {}", check.name, if check.passed { "ok" } else { "FAILED" });
    }
    println!("ball equality: {}", verify_ball_equality(&e, &b, 50, 3)?.passed);
    Ok(())
}
