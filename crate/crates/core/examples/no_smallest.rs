// `C⁻` and `C⁺` compactifications are both minimal, so neither is smallest.

use std::error::Error;

use ordcomp::compact::{attempt_domination, compactify, BuildParams, Compactification};
use ordcomp::sampled::{build_family, FamilySpec, NatDiscrete, TailClassSelector};

fn build(class: TailClassSelector) -> Result<Compactification, Box<dyn Error>> {
    let params = BuildParams::default().with_resolution(12);
    let family = build_family(
        &NatDiscrete,
        &FamilySpec::Bumps(class),
        params.resolution,
        params.tail_depth,
    )?;
    Ok(compactify(&NatDiscrete, &family, &params)?)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let c = build(TailClassSelector::C)?;
    let minus = build(TailClassSelector::CMinus)?;
    let plus = build(TailClassSelector::CPlus)?;

    for target in [&minus, &plus] {
        let attempt = attempt_domination(&c, target)?;
        println!(
            "{} -> {}: {}",
            c.label(),
            target.label(),
            attempt.found.is_some()
        );
        assert!(attempt.found.is_some());
    }
    for (a, b) in [(&minus, &plus), (&plus, &minus)] {
        let attempt = attempt_domination(a, b)?;
        for r in &attempt.rejected {
            println!("  rejected {:?}: {}", r.assignment, r.failed.join(", "));
        }
        assert!(attempt.found.is_none());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("no-smallest example failed");
}
