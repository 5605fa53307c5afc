// Quotienting then compactifying agrees with compactifying then quotienting.

use std::error::Error;

use ordcomp::compact::{nachbin_pipeline, BuildParams};
use ordcomp::sampled::{FamilySpec, RealLineMirror};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // x ≤ y iff |y| ≤ |x| on the real line; the quotient is a ray.
    let r = nachbin_pipeline(
        &RealLineMirror,
        &FamilySpec::Default,
        &BuildParams::default().with_resolution(32),
    )?;
    for c in &r.checks {
        println!("{:<28} {}", c.name, if c.passed { "PASS" } else { "FAIL" });
    }
    for (k, v) in &r.metrics {
        println!("{k} = {v}");
    }
    assert!(r.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("nachbin diagram example failed");
}
