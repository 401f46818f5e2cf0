//! Numeric spectra of the level Laplacians `L_r = L(q^(1 - r))`: simulation
//! at arbitrary precision, splitting a sampled spectrum back into levels,
//! recovering `P(X, Y)` from the levels, and the perturbation experiment
//! that separates two graphs sharing most of their edges.

mod cluster;
mod eigen;
mod recover;
mod sample;
mod separation;

pub use cluster::{cluster_and_assign, cluster_and_assign_with, ClusterAssignment};
pub use eigen::{sym_eigen, sym_eigs, Eigen};
pub use recover::{level_charpoly, recover_from_level_zero, recover_spectral_poly, Recovered};
pub use sample::{
    bits_for_digits, digits_for_bits, simulate_levels, simulate_spectrum, working_bits,
    SpectrumSample, MAX_WORKING_BITS,
};
pub use separation::{
    hausdorff, separation_experiment, Prediction, SeparatingVector, SeparationReport,
};
