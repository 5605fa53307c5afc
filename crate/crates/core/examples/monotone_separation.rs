// Urysohn-style separation and representation by isotone functions.

use std::error::Error;

use fixedbitset::FixedBitSet;
use ordcomp::finite::{
    enumerate_isotone_functions, monotone_separation, parse_space, representation_check,
    ChainFunction, Separation, DEFAULT_ENUMERATION_BUDGET,
};

fn set(n: usize, members: &[usize]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.extend(members.iter().copied());
    s
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // A discrete 4-chain 0 ≤ 1 ≤ 2 ≤ 3.
    let sp = parse_space(
        r#"{ "n": 4, "basis": [[0], [1], [2], [3]], "relation": [[0, 1], [1, 2], [2, 3]] }"#,
    )?;
    match monotone_separation(&sp, &set(4, &[3]), &set(4, &[0]), 2)? {
        Separation::Separated(f) => {
            println!("f = {:?}", f.to_reals());
            assert_eq!(f.values, [0, 1, 1, 2]);
        }
        Separation::Inseparable { witness } => {
            return Err(format!("inseparable at {witness}").into())
        }
    }

    let fns: Vec<Vec<f64>> = enumerate_isotone_functions(&sp, 1, DEFAULT_ENUMERATION_BUDGET)?
        .iter()
        .map(ChainFunction::to_reals)
        .collect();
    let r = representation_check(&sp, &fns)?;
    println!(
        "{} isotone 0/1 functions, represented = {}",
        fns.len(),
        r.passed()
    );
    assert_eq!(fns.len(), 5);
    assert!(r.passed());

    // Connected topology: only constants are continuous, so no separation.
    let tied = parse_space(r#"{ "n": 2, "basis": [], "relation": [[0, 1]] }"#)?;
    let s = monotone_separation(&tied, &set(2, &[1]), &set(2, &[0]), 1);
    println!("indiscrete pair: {s:?}");
    assert!(s.is_err() || matches!(s, Ok(Separation::Inseparable { .. })));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("monotone separation example failed");
}
