//! Cyclic Jacobi eigensolver for symmetric matrices at arbitrary precision.

use rug::float::Round;
use rug::ops::AssignRound;
use rug::Float;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in increasing order with unit eigenvectors; `vectors[k]` goes
/// with `values[k]`.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<Float>,
    pub vectors: Vec<Vec<Float>>,
}

/// Eigenvalues of a symmetric matrix, increasing.
pub fn sym_eigs(m: &ExactMatrix, precision_bits: u32) -> Result<Vec<Float>> {
    Ok(sym_eigen(m, precision_bits)?.values)
}

/// Full eigendecomposition of a symmetric matrix at `precision_bits`
/// mantissa bits.
///
/// Iterates until the off-diagonal Frobenius norm drops below
/// `2^-(precision_bits - 8) * ||M||_F`, then checks that the eigenvalues sum
/// to the trace within `2^-(precision_bits / 2)` relative to `||M||_F`.
pub fn sym_eigen(m: &ExactMatrix, precision_bits: u32) -> Result<Eigen> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if precision_bits < 16 {
        return Err(Error::InvalidArgument(format!(
            "precision must be at least 16 bits, got {precision_bits}"
        )));
    }
    let n = m.n();
    let p = precision_bits;
    let mut a: Vec<Vec<Float>> = (0..n)
        .map(|i| (0..n).map(|j| Float::with_val(p, m.get(i, j))).collect())
        .collect();
    let mut v: Vec<Vec<Float>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Float::with_val(p, u32::from(i == j)))
                .collect()
        })
        .collect();

    let norm = frobenius(&a, p);
    let tol = Float::with_val(p, &norm >> (p as i32 - 8));
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal(&a, p) <= tol {
            converged = true;
            break;
        }
        for i in 0..n {
            for j in i + 1..n {
                rotate(&mut a, &mut v, i, j, p);
            }
        }
    }
    if !converged && off_diagonal(&a, p) > tol {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[x][x].partial_cmp(&a[y][y]).expect("finite eigenvalues"));
    let values: Vec<Float> = order.iter().map(|&k| a[k][k].clone()).collect();
    let vectors: Vec<Vec<Float>> = order
        .iter()
        .map(|&k| (0..n).map(|r| v[r][k].clone()).collect())
        .collect();

    let trace = Float::with_val(p, &m.trace());
    let sum: Float = Float::with_val(p, Float::sum(values.iter()));
    let drift = Float::with_val(p, &sum - &trace).abs();
    let allowed = Float::with_val(p, &norm >> (p as i32 / 2));
    if drift > allowed && !norm.is_zero() {
        return Err(Error::PrecisionExhausted(format!(
            "eigenvalue sum misses the trace by {:.3e}",
            drift.to_f64()
        )));
    }
    Ok(Eigen { values, vectors })
}

fn frobenius(a: &[Vec<Float>], p: u32) -> Float {
    let mut s = Float::new(p);
    for row in a {
        for x in row {
            s += Float::with_val(p, x.square_ref());
        }
    }
    s.sqrt()
}

fn off_diagonal(a: &[Vec<Float>], p: u32) -> Float {
    let mut s = Float::new(p);
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j {
                s += Float::with_val(p, x.square_ref());
            }
        }
    }
    s.sqrt()
}

/// One Jacobi rotation annihilating `a[i][j]`.
fn rotate(a: &mut [Vec<Float>], v: &mut [Vec<Float>], i: usize, j: usize, p: u32) {
    if a[i][j].is_zero() {
        return;
    }
    let n = a.len();
    let two_aij = Float::with_val(p, &a[i][j] * 2u32);
    let theta = Float::with_val(p, &a[j][j] - &a[i][i]) / &two_aij;
    let root = (Float::with_val(p, theta.square_ref()) + 1u32).sqrt();
    let mut t = Float::with_val(p, theta.abs_ref()) + &root;
    t.recip_mut();
    if theta.is_sign_negative() {
        t = -t;
    }
    let c = (Float::with_val(p, t.square_ref()) + 1u32).sqrt().recip();
    let s = Float::with_val(p, &t * &c);
    let shift = Float::with_val(p, &t * &a[i][j]);
    a[i][i] -= &shift;
    a[j][j] += &shift;
    a[i][j].assign_round(0, Round::Nearest);
    a[j][i].assign_round(0, Round::Nearest);
    for r in 0..n {
        if r != i && r != j {
            let (ri, rj) = (a[r][i].clone(), a[r][j].clone());
            let ni = Float::with_val(p, &c * &ri) - Float::with_val(p, &s * &rj);
            let nj = Float::with_val(p, &s * &ri) + Float::with_val(p, &c * &rj);
            a[i][r] = ni.clone();
            a[r][i] = ni;
            a[j][r] = nj.clone();
            a[r][j] = nj;
        }
    }
    for row in v.iter_mut() {
        let (ri, rj) = (row[i].clone(), row[j].clone());
        row[i] = Float::with_val(p, &c * &ri) - Float::with_val(p, &s * &rj);
        row[j] = Float::with_val(p, &s * &ri) + Float::with_val(p, &c * &rj);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::matrix::laplacian;

    fn f64s(xs: &[Float]) -> Vec<f64> {
        xs.iter().map(Float::to_f64).collect()
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len()
            && a.iter()
                .zip(b)
                .all(|(x, y)| (x - y).abs() < 1e-30_f64.max(1e-12 * y.abs()))
    }

    #[test]
    fn known_spectra() {
        let k2 = ExactMatrix::from_i64_rows(&[&[1, -1], &[-1, 1]]).unwrap();
        assert!(close(&f64s(&sym_eigs(&k2, 128).unwrap()), &[0.0, 2.0]));
        let k3 = laplacian(&Graph::complete(3));
        assert!(close(&f64s(&sym_eigs(&k3, 256).unwrap()), &[0.0, 3.0, 3.0]));
        let c4 = laplacian(&Graph::cycle(4));
        assert!(close(
            &f64s(&sym_eigs(&c4, 256).unwrap()),
            &[0.0, 2.0, 2.0, 4.0]
        ));
    }

    #[test]
    fn eigenvectors_satisfy_equation() {
        let m = laplacian(&Graph::path(5));
        let e = sym_eigen(&m, 200).unwrap();
        for (lam, vec) in e.values.iter().zip(&e.vectors) {
            for i in 0..5 {
                let mut s = Float::new(200);
                for j in 0..5 {
                    s += Float::with_val(200, &vec[j] * m.get(i, j));
                }
                s -= Float::with_val(200, lam * &vec[i]);
                assert!(s.abs() < 1e-50);
            }
        }
    }

    #[test]
    fn rejects_asymmetric() {
        let m = ExactMatrix::from_i64_rows(&[&[1, 2], &[0, 1]]).unwrap();
        assert_eq!(sym_eigs(&m, 64).unwrap_err(), Error::NotSymmetric);
    }
}
