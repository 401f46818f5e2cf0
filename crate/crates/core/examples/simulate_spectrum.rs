// Level spectra of the p-adic Laplacian of a labelled path, computed with
// arbitrary precision.

use spectral_curves::spectra::{simulate_levels, simulate_spectrum, working_bits};
use spectral_curves::{DiffusionPair, Result};

pub fn run_example() -> Result<()> {
    let dp = DiffusionPair::new(3, &[(1, 2, 1), (2, 3, 2)])?;
    let q = 7;
    for (r, values) in simulate_levels(&dp, q, -1, 1, 128)? {
        let shown: Vec<String> = values
            .iter()
            .map(|v| v.to_string_radix(10, Some(10)))
            .collect();
        println!(
            "r = {r:>2} ({} bits): {}",
            working_bits(&dp, q, r, 128),
            shown.join(", ")
        );
    }
    let sample = simulate_spectrum(&dp, q, -1, 1, 128)?;
    println!(
        "{} values, {} components",
        sample.values.len(),
        sample.components()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
