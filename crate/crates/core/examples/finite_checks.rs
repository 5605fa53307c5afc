// Closedness, T1 and the quotient of small finite spaces.

use std::error::Error;

use ordcomp::finite::parse_space;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // Sierpiński space with the discrete order: {0} is open, {1} is not.
    let sierpinski = parse_space(r#"{ "n": 2, "basis": [[0]], "relation": [] }"#)?;
    let closed = sierpinski.graph_is_closed();
    println!("sierpinski: graph closed = {}", closed.passed());
    println!("  witness: {:?}", closed.witness("graph_closed"));
    assert!(!closed.passed());
    assert!(!sierpinski.is_t1());

    // Two points glued by the preorder, one isolated point.
    let glued =
        parse_space(r#"{ "n": 3, "basis": [[0, 1], [2]], "relation": [[0, 1], [1, 0], [1, 2]] }"#)?;
    println!(
        "glued: closed = {}, T1 = {}",
        glued.is_closed_preorder(),
        glued.is_t1()
    );
    assert!(glued.is_closed_preorder() && glued.is_t1());
    let q = glued.quotient_space();
    println!(
        "quotient: {} points, antisymmetric = {}, closed = {}",
        q.n(),
        q.preorder().is_antisymmetric(),
        q.is_closed_preorder()
    );
    assert_eq!(q.n(), 2);
    assert!(q.preorder().is_antisymmetric());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("finite checks example failed");
}
