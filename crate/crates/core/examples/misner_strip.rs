// Causal order of the Misner strip and its compactification.

use std::error::Error;

use ordcomp::cli::misner_sweep_mismatches;
use ordcomp::compact::{
    compactify, remainder_is_ordered, verify_preorder_embedding, BuildParams, CorePosition,
};
use ordcomp::sampled::misner::causal_le;
use ordcomp::sampled::{build_family, FamilySpec, MisnerStrip, PairSampling, Point};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = Point(vec![0.5, 0.0]);
    let q = Point(vec![0.2, 1.0]);
    println!("(0.5, 0) ≤ (0.2, 1): {}", causal_le(&p, &q));
    assert!(causal_le(&p, &q) && !causal_le(&q, &p));

    let mismatches = misner_sweep_mismatches(32);
    println!("sweep vs closed form on 32×32: {mismatches} mismatches");
    assert_eq!(mismatches, 0);

    let params = BuildParams::default().with_resolution(16);
    let family = build_family(
        &MisnerStrip,
        &FamilySpec::Default,
        params.resolution,
        params.tail_depth,
    )?;
    let comp = compactify(&MisnerStrip, &family, &params)?;
    let e = verify_preorder_embedding(&MisnerStrip, &comp, &PairSampling::default(), 0.01);
    println!(
        "embedding violation rate {:.2e}",
        e.metrics["embedding_violation_rate"]
    );
    assert!(e.passed());
    assert!(remainder_is_ordered(&comp)?.passed());
    let rem = comp.remainder_ids();
    assert_eq!(rem.len(), 1);
    assert_eq!(comp.position_against_core(rem[0]), CorePosition::Top);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("misner strip example failed");
}
