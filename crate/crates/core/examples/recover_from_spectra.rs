// Recovers `P` from spectra sampled at two primes: split each sample into
// levels, then interpolate through the level nodes.

use spectral_curves::spectra::{cluster_and_assign, recover_spectral_poly, simulate_spectrum};
use spectral_curves::{spectral_polynomial, DiffusionPair, Result};

pub fn run_example() -> Result<()> {
    let dp = DiffusionPair::new(3, &[(1, 2, 1), (2, 3, 2), (1, 3, 4)])?;
    let d = dp.label_sum();
    let r_min = 1 - d as i64;
    let samples = vec![
        simulate_spectrum(&dp, 101, r_min, 1, 256)?,
        simulate_spectrum(&dp, 1009, r_min, 1, 256)?,
    ];
    let assignments = cluster_and_assign(&samples)?;
    let a = &assignments[0];
    println!(
        "q = {}: {} levels, smallest gap ratio {:.3e}",
        a.q,
        a.levels.len(),
        a.min_inter_gap
    );

    let rec = recover_spectral_poly(a, a.q, d as usize)?;
    println!("recovered P = {}", rec.poly);
    println!("snapping residual {:.2e}", rec.residual);
    assert_eq!(rec.poly, spectral_polynomial(&dp));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
