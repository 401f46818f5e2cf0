// Rebuilds a graph from its spectral polynomial under powers-of-two labels.

use spectral_curves::reconstruct::{decode_forest_family, reconstruct_from_polynomial};
use spectral_curves::{is_isomorphic, spectral_polynomial, DiffusionPair, Graph, Result};

pub fn run_example() -> Result<()> {
    let g = Graph::new(5, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (2, 5)])?;
    let p = spectral_polynomial(&DiffusionPair::with_powers_of_two(&g)?);

    let fam = decode_forest_family(&p)?;
    for i in (1..=fam.n).rev() {
        let count = fam.family(i).map_or(0, |f| f.len());
        println!("{i} components: {count} forests");
    }

    let rebuilt = reconstruct_from_polynomial(&p)?;
    print!("{}", rebuilt.to_text());
    println!(
        "isomorphic to the original: {}",
        is_isomorphic(rebuilt.graph(), &g)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
