//! Brute-force ground truth: spanning forests, the forest expansion of the
//! spectral polynomial, matrix-tree counts and Kel'mans coefficients.
//!
//! With `P(X, Y) = det(X I - L(Y))`, the coefficient of `X^i` is
//! `(-1)^(n-i)` times the sum over spanning forests with `i` components of
//! `gamma(F) Y^(sum of labels)`, where `gamma(F)` is the product of the
//! component sizes. For `K2` this gives `-2Y`, so the size factor cannot be
//! dropped.

mod cofactor;
mod forests;
mod suite;
mod trees;

pub use cofactor::cofactor_spectral_polynomial;
pub use forests::{
    buslov_polynomial, enumerate_forests, enumerate_forests_capped, label_family_from_text,
    label_family_to_text, Forest, ForestFamily, LabelFamily, DEFAULT_EDGE_CAP,
};
pub use suite::{kelmans_matches, random_labels, run_oracle_suite, SuiteReport};
pub use trees::{bareiss_det, kelmans_charpoly, kelmans_coefficients, tree_count};
