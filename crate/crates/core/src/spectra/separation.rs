//! Separating two graphs on the same vertex set by perturbing their common
//! part: `L_(eps, i) = U(C) + eps U(C_i)` with `C = E_1 ∩ E_2` and
//! `C_i = E_i \ C`.

use std::collections::BTreeSet;

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::matrix::{edge_set_laplacian, seminorm_sq, ExactMatrix};

use super::eigen::sym_eigen;

/// First-order prediction against the computed eigenvalue, per index.
#[derive(Clone, Debug)]
pub struct Prediction {
    /// Eigenvalue of `U(C)`.
    pub base: Float,
    pub predicted_1: Float,
    pub actual_1: Float,
    pub predicted_2: Float,
    pub actual_2: Float,
}

/// An eigenvector of `U(C)` whose seminorms on `C_1` and `C_2` differ.
#[derive(Clone, Debug)]
pub struct SeparatingVector {
    pub eigenvalue: Float,
    pub vector: Vec<Float>,
    pub seminorm_1: Float,
    pub seminorm_2: Float,
}

#[derive(Clone, Debug)]
pub struct SeparationReport {
    pub epsilon: f64,
    pub common: Vec<Edge>,
    pub only_1: Vec<Edge>,
    pub only_2: Vec<Edge>,
    pub spectrum_1: Vec<Float>,
    pub spectrum_2: Vec<Float>,
    pub hausdorff: Float,
    pub predictions: Vec<Prediction>,
    pub separating: Option<SeparatingVector>,
}

impl SeparationReport {
    /// Largest `|actual - predicted|` over both perturbed matrices.
    pub fn max_prediction_error(&self) -> Float {
        let prec = self.hausdorff.prec();
        let mut worst = Float::new(prec);
        for p in &self.predictions {
            for (a, b) in [(&p.actual_1, &p.predicted_1), (&p.actual_2, &p.predicted_2)] {
                let d = Float::with_val(prec, a - b).abs();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }
}

/// Hausdorff distance between two finite point sets on the line.
pub fn hausdorff(a: &[Float], b: &[Float]) -> Float {
    let prec = a.iter().chain(b).map(Float::prec).max().unwrap_or(64);
    let one_sided = |xs: &[Float], ys: &[Float]| {
        let mut worst = Float::new(prec);
        for x in xs {
            let near = ys
                .iter()
                .map(|y| Float::with_val(prec, x - y).abs())
                .min_by(|p, q| p.partial_cmp(q).expect("finite"))
                .unwrap_or_else(|| Float::with_val(prec, rug::float::Special::Infinity));
            if near > worst {
                worst = near;
            }
        }
        worst
    };
    let ab = one_sided(a, b);
    let ba = one_sided(b, a);
    if ab > ba {
        ab
    } else {
        ba
    }
}

pub fn separation_experiment(
    g1: &Graph,
    g2: &Graph,
    epsilon: f64,
    precision_bits: u32,
) -> Result<SeparationReport> {
    if g1.n() != g2.n() {
        return Err(Error::DimensionMismatch {
            expected: g1.n(),
            got: g2.n(),
        });
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let n = g1.n();
    let e1: BTreeSet<Edge> = g1.edges().iter().copied().collect();
    let e2: BTreeSet<Edge> = g2.edges().iter().copied().collect();
    let common: Vec<Edge> = e1.intersection(&e2).copied().collect();
    let only_1: Vec<Edge> = e1.difference(&e2).copied().collect();
    let only_2: Vec<Edge> = e2.difference(&e1).copied().collect();
    if only_1.is_empty() && only_2.is_empty() {
        return Err(Error::NothingToSeparate);
    }
    let p = precision_bits;
    let u = edge_set_laplacian(n, &common)?;
    let u1 = edge_set_laplacian(n, &only_1)?;
    let u2 = edge_set_laplacian(n, &only_2)?;
    let eps = Rational::from_f64(epsilon).expect("finite epsilon");

    let perturbed = |ui: &ExactMatrix| {
        let mut m = u.clone();
        for i in 0..n {
            for j in 0..n {
                *m.get_mut(i, j) += Rational::from(ui.get(i, j) * &eps);
            }
        }
        m
    };
    let spectrum_1 = sym_eigen(&perturbed(&u1), p)?.values;
    let spectrum_2 = sym_eigen(&perturbed(&u2), p)?.values;

    let base = sym_eigen(&u, p)?;
    let tol = Float::with_val(p, 1u32) >> (p as i32 / 2);
    let eps_f = Float::with_val(p, epsilon);
    let mut predicted_1 = Vec::with_capacity(n);
    let mut predicted_2 = Vec::with_capacity(n);
    let mut bases = Vec::with_capacity(n);
    let mut separating: Option<SeparatingVector> = None;
    let mut best_gap = Float::new(p);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && Float::with_val(p, &base.values[end] - &base.values[end - 1]) <= tol {
            end += 1;
        }
        let lambda = &base.values[start];
        let vecs = &base.vectors[start..end];
        let m1 = restricted_form(&u1, vecs, p)?;
        let m2 = restricted_form(&u2, vecs, p)?;
        for mu in sym_eigen(&m1, p)?.values {
            predicted_1.push(Float::with_val(
                p,
                lambda + Float::with_val(p, &mu * &eps_f),
            ));
        }
        for mu in sym_eigen(&m2, p)?.values {
            predicted_2.push(Float::with_val(
                p,
                lambda + Float::with_val(p, &mu * &eps_f),
            ));
        }
        bases.extend(std::iter::repeat_n(lambda.clone(), end - start));

        let mut diff = m1.clone();
        for i in 0..diff.n() {
            for j in 0..diff.n() {
                *diff.get_mut(i, j) -= m2.get(i, j);
            }
        }
        let d = sym_eigen(&diff, p)?;
        for (mu, w) in d.values.iter().zip(&d.vectors) {
            let gap = Float::with_val(p, mu.abs_ref());
            if gap > tol && gap > best_gap {
                let vector: Vec<Float> = (0..n)
                    .map(|r| {
                        let mut s = Float::new(p);
                        for (c, v) in w.iter().zip(vecs) {
                            s += Float::with_val(p, c * &v[r]);
                        }
                        s
                    })
                    .collect();
                separating = Some(SeparatingVector {
                    eigenvalue: lambda.clone(),
                    seminorm_1: seminorm_sq(&vector, &only_1)?,
                    seminorm_2: seminorm_sq(&vector, &only_2)?,
                    vector,
                });
                best_gap = gap;
            }
        }
        start = end;
    }
    let sort = |v: &mut Vec<Float>| v.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    sort(&mut predicted_1);
    sort(&mut predicted_2);
    let predictions = (0..n)
        .map(|k| Prediction {
            base: bases[k].clone(),
            predicted_1: predicted_1[k].clone(),
            actual_1: spectrum_1[k].clone(),
            predicted_2: predicted_2[k].clone(),
            actual_2: spectrum_2[k].clone(),
        })
        .collect();
    Ok(SeparationReport {
        epsilon,
        common,
        only_1,
        only_2,
        hausdorff: hausdorff(&spectrum_1, &spectrum_2),
        spectrum_1,
        spectrum_2,
        predictions,
        separating,
    })
}

/// `V^T M V` for the orthonormal columns `vecs`, symmetrized and converted
/// to exact rationals.
fn restricted_form(m: &ExactMatrix, vecs: &[Vec<Float>], p: u32) -> Result<ExactMatrix> {
    let k = vecs.len();
    let mut out = ExactMatrix::zeros(k);
    for a in 0..k {
        let mv: Vec<Float> = (0..m.n())
            .map(|i| {
                let mut s = Float::new(p);
                for j in 0..m.n() {
                    if *m.get(i, j) != 0 {
                        s += Float::with_val(p, &vecs[a][j] * m.get(i, j));
                    }
                }
                s
            })
            .collect();
        for b in a..k {
            let mut s = Float::new(p);
            for (x, y) in vecs[b].iter().zip(&mv) {
                s += Float::with_val(p, x * y);
            }
            let r = Rational::try_from(&s)
                .map_err(|_| Error::PrecisionExhausted("non-finite quadratic form".into()))?;
            *out.get_mut(a, b) = r.clone();
            *out.get_mut(b, a) = r;
        }
    }
    Ok(out)
}
