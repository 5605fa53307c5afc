// Compactifying `[0,1)` with `H = {id}`: one new top point at 1.

use std::error::Error;

use ordcomp::compact::{
    compactify, preorder_dot, remainder_is_ordered, verify_preorder_embedding, vertices_csv,
    BuildParams, CorePosition,
};
use ordcomp::sampled::{build_family, FamilySpec, HalfOpenInterval, PairSampling};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let space = HalfOpenInterval;
    let params = BuildParams::default().with_resolution(8);
    let family = build_family(
        &space,
        &FamilySpec::Default,
        params.resolution,
        params.tail_depth,
    )?;
    let comp = compactify(&space, &family, &params)?;
    comp.require_complete()?;

    let rem = comp.remainder_ids();
    println!(
        "{}: {} vertices, remainder {rem:?}",
        comp.label(),
        comp.len()
    );
    assert_eq!(rem.len(), 1);
    assert_eq!(comp.coord(rem[0], 0), 1.0);
    assert_eq!(comp.position_against_core(rem[0]), CorePosition::Top);

    let embedding = verify_preorder_embedding(&space, &comp, &PairSampling::default(), 0.0);
    assert!(embedding.passed());
    assert!(remainder_is_ordered(&comp)?.passed());

    print!("{}", vertices_csv(&comp)?);
    print!("{}", preorder_dot(&comp));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("half-open interval example failed");
}
