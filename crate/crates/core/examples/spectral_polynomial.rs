// Exact spectral polynomial of a labelled triangle, its tangent cone, and
// its evaluation at a few level nodes.

use spectral_curves::matrix::level_node;
use spectral_curves::oracles::buslov_polynomial;
use spectral_curves::{spectral_polynomial, DiffusionPair, Result};

pub fn run_example() -> Result<()> {
    let dp = DiffusionPair::new(3, &[(1, 2, 1), (2, 3, 2), (1, 3, 4)])?;
    let p = spectral_polynomial(&dp);
    println!("P(X, Y) = {p}");
    println!("tangent cone: {}", p.tangent_cone()?);
    assert_eq!(p, buslov_polynomial(&dp)?);

    for r in [1, 0, -1] {
        let y = level_node(5, r);
        println!("r = {r:>2}, Y = {y}: {}", p.evaluate_y(&y));
    }
    print!("{}", p.to_text());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
