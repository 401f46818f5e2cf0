// Two non-isomorphic graphs with the same Laplacian spectrum are told apart
// by their spectral polynomials once one edge on each side is labelled 2.

use spectral_curves::catalog::isospectral_pair;
use spectral_curves::{is_isomorphic, spectral_polynomial, Result};

pub fn run_example() -> Result<()> {
    let (left, right) = isospectral_pair();
    println!("isomorphic: {}", is_isomorphic(left.graph(), right.graph()));

    let (p1, p2) = (spectral_polynomial(&left), spectral_polynomial(&right));
    let at_one = |p: &spectral_curves::SpectralPolynomial| {
        p.coeffs()
            .iter()
            .map(|a| a.terms().map(|(_, c)| c.clone()).sum::<rug::Integer>())
            .collect::<Vec<_>>()
    };
    println!("P1(X,1) == P2(X,1): {}", at_one(&p1) == at_one(&p2));
    println!("P1 == P2: {}", p1 == p2);

    let (t1, t2) = (p1.tangent_cone()?, p2.tangent_cone()?);
    println!("T1 = {t1}");
    println!("T2 = {t2}");
    assert!(at_one(&p1) == at_one(&p2) && p1 != p2 && t1 != t2);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
