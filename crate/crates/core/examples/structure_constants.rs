//! Structure constants of an algebra, and closure of a tuple that does not span one.

use convexotonic::algebras::{algebra_closure, structure_constants, DEFAULT_SPAN_TOL};
use convexotonic::{catalog, MatrixTuple};

fn main() -> convexotonic::Result<()> {
    for (name, j) in catalog::two_dimensional_algebras() {
        let sc = structure_constants(&j, DEFAULT_SPAN_TOL)?;
        println!("{name}: span residual {:.1e}, convexotonic residual {:.1e}", sc.relative_residual, sc.convexotonic_residual);
    }

    // The 3x3 shift alone does not span an algebra; closure appends its square.
    let shift = MatrixTuple::new(vec![catalog::tuple_f().get(0).clone()])?;
    let closure = algebra_closure(&shift, DEFAULT_SPAN_TOL)?;
    println!("shift closure appends {} element(s)", closure.appended_count);
    let xi = structure_constants(&closure.extended, DEFAULT_SPAN_TOL)?.xi;
    for (j, m) in xi.iter().enumerate() {
        let rows: Vec<String> = m.row_iter().map(|r| r.iter().map(|z| format!("{:.3}", z.re)).collect::<Vec<_>>().join(" ")).collect();
        println!("Xi_{} = [{}]", j + 1, rows.join("; "));
    }
    Ok(())
}
