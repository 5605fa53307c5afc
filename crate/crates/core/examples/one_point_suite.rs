// Three one-point compactifications of the discrete naturals.

use std::error::Error;

use ordcomp::compact::{compactify, BuildParams, CorePosition};
use ordcomp::sampled::{build_family, FamilySpec, NatDiscrete, TailClassSelector};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let params = BuildParams::default().with_resolution(16);
    for (class, expected) in [
        (TailClassSelector::C, CorePosition::Incomparable),
        (TailClassSelector::CMinus, CorePosition::Bottom),
        (TailClassSelector::CPlus, CorePosition::Top),
    ] {
        let family = build_family(
            &NatDiscrete,
            &FamilySpec::Bumps(class),
            params.resolution,
            params.tail_depth,
        )?;
        let comp = compactify(&NatDiscrete, &family, &params)?;
        let rem = comp.remainder_ids();
        let position = comp.position_against_core(rem[0]);
        println!(
            "{:>6}: {} added point, {position:?}",
            class.as_str(),
            rem.len()
        );
        assert_eq!(rem.len(), 1);
        assert_eq!(position, expected);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("one-point suite example failed");
}
