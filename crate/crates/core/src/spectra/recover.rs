//! Recovering `P(X, Y)` from level spectra.

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::interp::interpolate_spectral_poly;
use crate::matrix::level_node;
use crate::poly::{RatPoly, SpectralPolynomial, UniPoly};

use super::cluster::{esym, ClusterAssignment};

/// Snapping tolerance used by [`recover_spectral_poly`].
pub const SNAP_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct Recovered {
    pub poly: SpectralPolynomial,
    /// Largest distance of a recovered coefficient from its integer.
    pub residual: f64,
    pub levels_used: usize,
}

/// `prod (X - v)` over the values, with exact rational coefficients.
pub fn level_charpoly(values: &[Float]) -> RatPoly {
    let prec = values.iter().map(Float::prec).max().unwrap_or(64);
    let e = esym(values, prec + 16);
    let n = values.len();
    let mut coeffs = vec![Rational::new(); n + 1];
    for (j, ej) in e.iter().enumerate() {
        let c = Rational::try_from(ej).expect("finite value");
        coeffs[n - j] = if j % 2 == 0 { c } else { -c };
    }
    RatPoly::new(coeffs)
}

/// Interpolates `P` through the assigned levels at nodes `y_r = q^(1 - r)`.
pub fn recover_spectral_poly(
    assignment: &ClusterAssignment,
    q: u64,
    degree_bound: usize,
) -> Result<Recovered> {
    let needed = degree_bound + 1;
    if assignment.levels.len() < needed {
        return Err(Error::InsufficientLevels {
            needed,
            got: assignment.levels.len(),
        });
    }
    let samples: Vec<(Rational, RatPoly)> = assignment
        .levels
        .iter()
        .map(|(&r, vals)| (level_node(q, r), level_charpoly(vals)))
        .collect();
    let out = interpolate_spectral_poly(&samples, degree_bound, SNAP_TOLERANCE)?;
    Ok(Recovered {
        poly: out.poly,
        residual: out.residual,
        levels_used: needed,
    })
}

/// Reads `P` off the level-0 block alone: `(-1)^j a_(n-j)(q)` is an integer
/// whose base-`q` digits are the (nonnegative) coefficients of
/// `(-1)^j a_(n-j)(Y)`. Valid when `q` exceeds every coefficient; the digit
/// sums are checked against level 1 when it is present.
pub fn recover_from_level_zero(assignment: &ClusterAssignment, q: u64) -> Result<Recovered> {
    let level0 = assignment
        .level(0)
        .ok_or(Error::InsufficientLevels { needed: 1, got: 0 })?;
    let n = level0.len();
    let prec = level0.iter().map(Float::prec).max().unwrap_or(64);
    let e = esym(level0, prec);
    let check = assignment.level(1).map(|v| esym(v, prec));
    let base = Integer::from(q);
    let mut residual = 0.0f64;
    let mut coeffs = vec![UniPoly::zero(); n + 1];
    for (j, ej) in e.iter().enumerate() {
        let rounded = ej
            .to_integer()
            .ok_or_else(|| Error::PrecisionExhausted("non-finite value".into()))?;
        let dist = Float::with_val(prec, ej - &rounded).abs().to_f64();
        residual = residual.max(dist);
        if dist > SNAP_TOLERANCE {
            return Err(Error::SnappingResidual {
                residual: dist,
                tolerance: SNAP_TOLERANCE,
            });
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let mut x = rounded;
        let mut t = 0u64;
        let mut digit_sum = Integer::new();
        let mut poly = UniPoly::zero();
        while x != 0 {
            let (quot, rem) = x.div_rem_floor(base.clone());
            digit_sum += &rem;
            poly.add_term(t, rem * sign);
            x = quot;
            t += 1;
        }
        if let Some(ref1) = &check {
            let want = ref1[j].to_integer().unwrap_or_default();
            if want != digit_sum {
                return Err(Error::AmbiguousClustering(format!(
                    "base-{q} digits of e_{j} do not match level 1; retry with a larger prime"
                )));
            }
        }
        coeffs[n - j] = poly;
    }
    Ok(Recovered {
        poly: SpectralPolynomial::new(coeffs)?,
        residual,
        levels_used: 1,
    })
}
