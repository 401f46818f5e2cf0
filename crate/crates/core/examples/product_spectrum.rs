// The Laplacian spectrum of a Cartesian product is the set of pairwise sums.

use rug::Float;
use spectral_curves::matrix::laplacian;
use spectral_curves::spectra::sym_eigs;
use spectral_curves::{Graph, Result};

pub fn run_example() -> Result<()> {
    let prec = 192;
    let (g, h) = (Graph::path(3), Graph::cycle(4));
    let sg = sym_eigs(&laplacian(&g), prec)?;
    let sh = sym_eigs(&laplacian(&h), prec)?;
    let prod = sym_eigs(&laplacian(&g.cartesian_product(&h)), prec)?;

    let mut sums: Vec<Float> = sg
        .iter()
        .flat_map(|a| sh.iter().map(move |b| Float::with_val(prec, a + b)))
        .collect();
    sums.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let worst = prod
        .iter()
        .zip(&sums)
        .map(|(x, y)| Float::with_val(prec, x - y).abs().to_f64())
        .fold(0.0, f64::max);
    println!("{} eigenvalues, largest deviation {worst:.3e}", prod.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
