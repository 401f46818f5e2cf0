//! Batch comparison of the exact pipeline against the oracles.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::Rational;

use crate::catalog::connected_graphs;
use crate::charpoly::{charpoly_division_free, spectral_polynomial};
use crate::error::Result;
use crate::graph::{DiffusionPair, Graph};
use crate::matrix::laplacian;

use super::{buslov_polynomial, cofactor_spectral_polynomial, kelmans_charpoly};

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub graphs: usize,
    pub label_draws: usize,
    /// Descriptions of every disagreement found.
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Distinct labels drawn from `1..=4m`.
pub fn random_labels(m: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    if m == 0 {
        return Vec::new();
    }
    sample(rng, 4 * m, m)
        .into_iter()
        .map(|i| i as u64 + 1)
        .collect()
}

/// Runs the forest expansion and cofactor oracles on `draws` random
/// labellings spread over every connected graph with at most `max_n`
/// vertices (each graph gets at least one), plus the Kel'mans identity on
/// every such graph.
pub fn run_oracle_suite(max_n: usize, draws: usize, seed: u64) -> Result<SuiteReport> {
    let graphs: Vec<Graph> = (1..=max_n).flat_map(connected_graphs).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport {
        graphs: graphs.len(),
        ..SuiteReport::default()
    };
    for g in &graphs {
        if !kelmans_matches(g) {
            report.failures.push(format!("kelmans: {:?}", g.edges()));
        }
    }
    let total = draws.max(graphs.len());
    for k in 0..total {
        let g = &graphs[k % graphs.len()];
        let labels = random_labels(g.num_edges(), &mut rng);
        let dp = DiffusionPair::from_graph(g, &labels)?;
        let p = spectral_polynomial(&dp);
        if buslov_polynomial(&dp)? != p {
            report
                .failures
                .push(format!("buslov: {}", dp.to_text().trim()));
        }
        if cofactor_spectral_polynomial(&dp) != p {
            report
                .failures
                .push(format!("cofactor: {}", dp.to_text().trim()));
        }
        report.label_draws += 1;
    }
    Ok(report)
}

/// Kel'mans coefficients against the exact Laplacian characteristic polynomial.
pub fn kelmans_matches(g: &Graph) -> bool {
    let exact = charpoly_division_free(&laplacian(g));
    let kel: Vec<Rational> = kelmans_charpoly(g)
        .into_iter()
        .map(Rational::from)
        .collect();
    exact.coeffs() == kel.as_slice()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let r = run_oracle_suite(4, 20, 1).unwrap();
        assert_eq!(r.graphs, 10);
        assert_eq!(r.label_draws, 20);
        assert!(r.passed(), "{:?}", r.failures);
    }
}
