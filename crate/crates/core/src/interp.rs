//! Exact interpolation of `P(X, Y)` from characteristic polynomials sampled
//! at `Y = y_r`, with integer snapping for approximate inputs.

use std::collections::HashSet;

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::poly::{RatPoly, SpectralPolynomial, UniPoly};

#[derive(Clone, Debug)]
pub struct Interpolated {
    pub poly: SpectralPolynomial,
    /// Largest distance between an interpolated coefficient and its integer.
    pub residual: f64,
    /// Largest relative disagreement at nodes not used for the fit.
    pub node_mismatch: f64,
}

/// Fits each `a_i(Y)` (degree at most `degree_bound`) through the samples.
///
/// The `degree_bound + 1` nodes of smallest magnitude are used for the fit;
/// any further nodes are checked against the snapped result. Fails when the
/// snapping residual or the extra-node mismatch exceeds `tolerance`
/// (`0.0` demands exact agreement).
pub fn interpolate_spectral_poly(
    samples: &[(Rational, RatPoly)],
    degree_bound: usize,
    tolerance: f64,
) -> Result<Interpolated> {
    let needed = degree_bound + 1;
    if samples.len() < needed {
        return Err(Error::InsufficientNodes {
            needed,
            got: samples.len(),
        });
    }
    let mut seen = HashSet::new();
    for (y, _) in samples {
        if !seen.insert(y.clone()) {
            return Err(Error::DuplicateNode(y.to_string()));
        }
    }
    let n = samples[0].1.degree().unwrap_or(0);
    if let Some((y, _)) = samples.iter().find(|(_, p)| p.degree().unwrap_or(0) != n) {
        return Err(Error::InvalidArgument(format!(
            "sample at Y={y} has a different X-degree"
        )));
    }

    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&a, &b| {
        Rational::from(samples[a].0.abs_ref()).cmp(&Rational::from(samples[b].0.abs_ref()))
    });
    let (fit, extra) = order.split_at(needed);
    let nodes: Vec<Rational> = fit.iter().map(|&k| samples[k].0.clone()).collect();

    let mut residual = Rational::new();
    let mut coeffs = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let values: Vec<Rational> = fit.iter().map(|&k| samples[k].1.coeff(i)).collect();
        let exact = newton_to_monomial(&nodes, &values);
        let mut a = UniPoly::zero();
        for (e, c) in exact.into_iter().enumerate() {
            let snapped = c.clone().round();
            let diff = Rational::from(&c - &snapped).abs();
            if diff > residual {
                residual = diff;
            }
            a.add_term(e as u64, snapped.into_numer_denom().0);
        }
        coeffs.push(a);
    }
    let residual_f = residual.to_f64();
    if residual_f > tolerance || (tolerance == 0.0 && residual != 0) {
        return Err(Error::SnappingResidual {
            residual: residual_f,
            tolerance,
        });
    }
    let poly = SpectralPolynomial::new(coeffs)?;

    let mut mismatch = 0.0f64;
    for &k in extra {
        let (y, sample) = &samples[k];
        let got = poly.evaluate_y(y);
        for i in 0..=n {
            let want = sample.coeff(i);
            let diff = Rational::from(&got.coeff(i) - &want).abs();
            if diff == 0 {
                continue;
            }
            let scale = Rational::from(want.abs_ref()).max(Rational::from(1));
            let rel = (diff / scale).to_f64();
            mismatch = mismatch.max(if rel == 0.0 { f64::MIN_POSITIVE } else { rel });
        }
    }
    if mismatch > tolerance {
        return Err(Error::SnappingResidual {
            residual: mismatch,
            tolerance,
        });
    }
    Ok(Interpolated {
        poly,
        residual: residual_f,
        node_mismatch: mismatch,
    })
}

/// Monomial coefficients (lowest first) of the interpolant through
/// `(nodes[k], values[k])`, via Newton divided differences.
pub fn newton_to_monomial(nodes: &[Rational], values: &[Rational]) -> Vec<Rational> {
    let m = nodes.len();
    let mut dd = values.to_vec();
    for level in 1..m {
        for k in (level..m).rev() {
            let num = Rational::from(&dd[k] - &dd[k - 1]);
            let den = Rational::from(&nodes[k] - &nodes[k - level]);
            dd[k] = num / den;
        }
    }
    let mut poly = vec![Rational::new(); m];
    let mut len = 0;
    for k in (0..m).rev() {
        // poly = poly * (Y - nodes[k]) + dd[k]
        let mut next = vec![Rational::new(); m];
        for e in 0..len {
            next[e + 1] += &poly[e];
            next[e] -= Rational::from(&poly[e] * &nodes[k]);
        }
        next[0] += &dd[k];
        len = (len + 1).min(m);
        poly = next;
    }
    poly
}

/// Nearest integer to `x` (ties away from zero).
pub fn snap(x: &Rational) -> Integer {
    x.clone().round().into_numer_denom().0
}
