//! Exact spectral polynomials of weighted graphs and the spectra of the
//! associated p-adic Laplacians.
//!
//! A [`DiffusionPair`] is a simple graph whose edges carry distinct positive
//! integer labels `alpha_e`. Giving edge `e` the weight `Y^alpha_e` turns the
//! graph Laplacian into a matrix over `Z[Y]`, and its characteristic
//! polynomial `P(X, Y) = det(X I - L(Y))` is the [`SpectralPolynomial`].
//! Evaluating at `Y = q^(1 - r)` gives the level-`r` Laplacians whose union
//! of spectra is the spectrum of the p-adic operator.
//!
//! The crate covers the whole loop:
//!
//! * [`graph`], [`matrix`], [`iso`]: graphs, Laplacians, canonical forms;
//! * [`charpoly`], [`interp`], [`poly`]: exact polynomial algebra;
//! * [`oracles`]: brute-force forest enumeration, Buslov and Kel'mans
//!   coefficient formulas, matrix-tree counts;
//! * [`spectra`]: arbitrary-precision eigenvalues, level clustering,
//!   recovery of `P` from spectra, perturbation separation;
//! * [`reconstruct`]: decoding the spanning-forest family from `P` and
//!   rebuilding the graph;
//! * [`catalog`]: named graphs and small-graph enumeration;
//! * [`game`]: the recovery game as a line-delimited JSON protocol.

pub mod catalog;
pub mod charpoly;
pub mod error;
pub mod game;
pub mod graph;
pub mod interp;
pub mod iso;
pub mod matrix;
pub mod oracles;
pub mod poly;
pub mod reconstruct;
pub mod spectra;

pub use charpoly::{charpoly_division_free, spectral_polynomial};
pub use error::{Error, Result};
pub use graph::{DiffusionPair, Graph, LabelScheme, Multigraph};
pub use iso::{canonical_form, is_isomorphic};
pub use poly::{BivariateHomogeneous, RatPoly, SpectralPolynomial, UniPoly};
