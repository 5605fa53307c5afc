// The least closed preorder containing a seed relation.

use std::error::Error;

use ordcomp::finite::{smallest_closed_preorder, FiniteTopology};

fn strict(g: &ordcomp::PreorderGraph) -> Vec<(usize, usize)> {
    g.pairs().filter(|(a, b)| a != b).collect()
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // Minimal neighbourhoods {0}, {1}, {1,2}: point 2 cannot be told from 1.
    let t = FiniteTopology::from_basis(3, &[vec![0], vec![1], vec![1, 2]])?;
    let g = smallest_closed_preorder(&t, [])?;
    println!("closure of the diagonal: {:?}", strict(&g));
    assert_eq!(strict(&g), [(1, 2), (2, 1)]);

    let g = smallest_closed_preorder(&t, [(0, 2)])?;
    println!("with 0 ≤ 2 seeded: {:?}", strict(&g));
    assert_eq!(strict(&g), [(0, 1), (0, 2), (1, 2), (2, 1)]);

    // In a discrete space every preorder is closed.
    let g = smallest_closed_preorder(&FiniteTopology::discrete(3), [(2, 0)])?;
    assert_eq!(strict(&g), [(2, 0)]);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("smallest closed preorder example failed");
}
