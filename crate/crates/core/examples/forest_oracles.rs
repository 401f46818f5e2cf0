// Spanning forests of the 4-cycle, the forest expansion of `P`, and the
// Kel'mans tree-count coefficients.

use spectral_curves::oracles::{
    buslov_polynomial, enumerate_forests, kelmans_coefficients, tree_count,
};
use spectral_curves::{spectral_polynomial, DiffusionPair, Graph, Multigraph, Result};

pub fn run_example() -> Result<()> {
    let g = Graph::cycle(4);
    let fam = enumerate_forests(&g)?;
    for (i, forests) in fam.families() {
        let gammas: Vec<u64> = forests.iter().map(|f| f.gamma).collect();
        println!(
            "{i} components: {} forests, gamma {gammas:?}",
            forests.len()
        );
    }

    let dp = DiffusionPair::with_powers_of_two(&g)?;
    assert_eq!(buslov_polynomial(&dp)?, spectral_polynomial(&dp));
    print!("{}", fam.to_text(Some(dp.labels()))?);

    println!("spanning trees: {}", tree_count(&Multigraph::from(&g)));
    println!("Kel'mans c_k: {:?}", kelmans_coefficients(&g));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
