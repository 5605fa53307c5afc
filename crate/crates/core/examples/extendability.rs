// Which isotone functions extend to a compactification, and `i(H)`.

use std::error::Error;

use ordcomp::compact::{compactify, extendability, i_closure, BuildParams};
use ordcomp::sampled::{
    build_family, FamilySpec, HalfOpenInterval, NatDiscrete, SampledSpace, TailClassSelector,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let params = BuildParams::default().with_resolution(64);
    let family = build_family(
        &HalfOpenInterval,
        &FamilySpec::Default,
        params.resolution,
        params.tail_depth,
    )?;
    let comp = compactify(&HalfOpenInterval, &family, &params)?;
    let pool = ["id", "sq", "sqrt", "exp3", "osc"]
        .iter()
        .map(|n| HalfOpenInterval.function(n))
        .collect::<Result<Vec<_>, _>>()?;
    let kept = i_closure(&HalfOpenInterval, &comp, &pool)?;
    println!("i(H) on [0,1): {kept:?}");
    assert_eq!(kept, ["id", "sq", "sqrt", "exp3"]);

    let params = BuildParams::default().with_resolution(16);
    let family = build_family(
        &NatDiscrete,
        &FamilySpec::Bumps(TailClassSelector::CMinus),
        16,
        params.tail_depth,
    )?;
    let comp = compactify(&NatDiscrete, &family, &params)?;
    for name in ["delta:2", "codelta:2", "alt"] {
        let e = extendability(&NatDiscrete, &comp, &NatDiscrete.function(name)?)?;
        println!("{name:>9} on the C⁻ point: {e:?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("extendability example failed");
}
