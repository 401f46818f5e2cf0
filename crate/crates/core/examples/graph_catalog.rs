// Counts isomorphism classes of small graphs through canonical forms.

use spectral_curves::catalog::{all_graphs, connected_graphs};
use spectral_curves::{canonical_form, Graph, Result};

pub fn run_example() -> Result<()> {
    for n in 1..=6 {
        println!(
            "n = {n}: {} graphs, {} connected",
            all_graphs(n).len(),
            connected_graphs(n).len()
        );
    }
    let g = Graph::path(4);
    let h = g.permuted(&[3, 1, 4, 2]);
    println!(
        "relabelled path has the same canonical form: {}",
        canonical_form(&g) == canonical_form(&h)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
