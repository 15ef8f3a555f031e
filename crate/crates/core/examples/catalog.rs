//! Run the full example catalog and summarize it.

use convexotonic::verify::example_catalog;

fn main() -> convexotonic::Result<()> {
    let report = example_catalog(42)?;
    let failed = report.failures().count();
    println!("{}: {} checks, {} failed", report.title, report.checks.len(), failed);
    for w in &report.warnings {
        println!("warning: {w}");
    }
    Ok(())
}
