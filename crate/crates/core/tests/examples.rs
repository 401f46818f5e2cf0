//! Every example runs to completion.

#[allow(dead_code)]
mod forest_oracles {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/forest_oracles.rs"
    ));
}

#[test]
fn forest_oracles_runs() {
    forest_oracles::run_example().expect("forest_oracles should run");
}

#[allow(dead_code)]
mod graph_catalog {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/graph_catalog.rs"
    ));
}

#[test]
fn graph_catalog_runs() {
    graph_catalog::run_example().expect("graph_catalog should run");
}

#[allow(dead_code)]
mod isospectral_pair {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/isospectral_pair.rs"
    ));
}

#[test]
fn isospectral_pair_runs() {
    isospectral_pair::run_example().expect("isospectral_pair should run");
}

#[allow(dead_code)]
mod perturbation_separation {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/perturbation_separation.rs"
    ));
}

#[test]
fn perturbation_separation_runs() {
    perturbation_separation::run_example().expect("perturbation_separation should run");
}

#[allow(dead_code)]
mod product_spectrum {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/product_spectrum.rs"
    ));
}

#[test]
fn product_spectrum_runs() {
    product_spectrum::run_example().expect("product_spectrum should run");
}

#[allow(dead_code)]
mod reconstruct_graph {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/reconstruct_graph.rs"
    ));
}

#[test]
fn reconstruct_graph_runs() {
    reconstruct_graph::run_example().expect("reconstruct_graph should run");
}

#[allow(dead_code)]
mod recover_from_spectra {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/recover_from_spectra.rs"
    ));
}

#[test]
fn recover_from_spectra_runs() {
    recover_from_spectra::run_example().expect("recover_from_spectra should run");
}

#[allow(dead_code)]
mod recovery_game {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/recovery_game.rs"
    ));
}

#[test]
fn recovery_game_runs() {
    recovery_game::run_example().expect("recovery_game should run");
}

#[allow(dead_code)]
mod simulate_spectrum {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/simulate_spectrum.rs"
    ));
}

#[test]
fn simulate_spectrum_runs() {
    simulate_spectrum::run_example().expect("simulate_spectrum should run");
}

#[allow(dead_code)]
mod spectral_polynomial {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/spectral_polynomial.rs"
    ));
}

#[test]
fn spectral_polynomial_runs() {
    spectral_polynomial::run_example().expect("spectral_polynomial should run");
}
