//! Randomized sv-genericity certificates.

use convexotonic::catalog;
use convexotonic::genericity::{sv_probe, ProbeOptions, ProbeOutcome};

fn main() -> convexotonic::Result<()> {
    let opts = ProbeOptions { seed: 7, ..ProbeOptions::default() };
    for (name, a) in [("E", catalog::tuple_e()), ("F", catalog::tuple_f())] {
        match sv_probe(&a, &opts)? {
            ProbeOutcome::Certified(cert) => {
                let check = cert.revalidate(&a, &opts)?;
                println!("{name}: certified after {} trials, revalidated: {}", cert.trials_used, check.valid);
            }
            ProbeOutcome::Inconclusive { trials_used } => println!("{name}: inconclusive after {trials_used} trials"),
            ProbeOutcome::Rejected(reasons) => {
                let reasons: Vec<String> = reasons.iter().map(ToString::to_string).collect();
                println!("{name}: rejected ({})", reasons.join(", "));
            }
        }
    }
    Ok(())
}
