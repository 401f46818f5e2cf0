//! Division-free characteristic polynomials (Berkowitz) and the spectral
//! polynomial `P(X, Y) = det(X I - L(Y))`.

use rayon::prelude::*;
use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::graph::DiffusionPair;
use crate::interp::interpolate_spectral_poly;
use crate::matrix::{symbolic_laplacian, weighted_laplacian, ExactMatrix};
use crate::poly::{RatPoly, SpectralPolynomial, UniPoly};

/// Commutative ring operations needed by Berkowitz.
pub trait Ring: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational::new()
    }
    fn one() -> Self {
        Rational::from(1)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, other: &Self) -> Self {
        Rational::from(self + other)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational::from(self * other)
    }
    fn neg(&self) -> Self {
        Rational::from(-self)
    }
}

impl Ring for Integer {
    fn zero() -> Self {
        Integer::new()
    }
    fn one() -> Self {
        Integer::from(1)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, other: &Self) -> Self {
        Integer::from(self + other)
    }
    fn mul(&self, other: &Self) -> Self {
        Integer::from(self * other)
    }
    fn neg(&self) -> Self {
        Integer::from(-self)
    }
}

impl Ring for UniPoly {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn one() -> Self {
        UniPoly::one()
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Coefficients of `det(X I - A)`, lowest degree first, by Berkowitz's
/// algorithm. Uses only ring operations.
pub fn berkowitz<R: Ring>(a: &[Vec<R>]) -> Result<Vec<R>> {
    let n = a.len();
    if let Some(row) = a.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: row.len(),
        });
    }
    if n == 0 {
        return Ok(vec![R::one()]);
    }
    // highest degree first while building
    let mut v = vec![R::one(), a[0][0].neg()];
    for r in 1..n {
        // t = [1, -a_rr, -R C, -R A C, ..., -R A^(r-1) C]
        let mut t = Vec::with_capacity(r + 2);
        t.push(R::one());
        t.push(a[r][r].neg());
        let mut col: Vec<R> = (0..r).map(|i| a[i][r].clone()).collect();
        for k in 0..r {
            let rc = (0..r)
                .filter(|&j| !a[r][j].is_zero() && !col[j].is_zero())
                .fold(R::zero(), |acc, j| acc.add(&a[r][j].mul(&col[j])));
            t.push(rc.neg());
            if k + 1 < r {
                col = (0..r)
                    .map(|i| {
                        (0..r)
                            .filter(|&j| !a[i][j].is_zero() && !col[j].is_zero())
                            .fold(R::zero(), |acc, j| acc.add(&a[i][j].mul(&col[j])))
                    })
                    .collect();
            }
        }
        let mut next = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut s = R::zero();
            for j in 0..=i.min(r) {
                if !t[i - j].is_zero() && !v[j].is_zero() {
                    s = s.add(&t[i - j].mul(&v[j]));
                }
            }
            next.push(s);
        }
        v = next;
    }
    v.reverse();
    Ok(v)
}

/// `det(X I - M)`, exact.
pub fn charpoly_division_free(m: &ExactMatrix) -> RatPoly {
    let rows: Vec<Vec<Rational>> = (0..m.n()).map(|i| m.row(i).to_vec()).collect();
    RatPoly::new(berkowitz(&rows).expect("ExactMatrix is square"))
}

/// Same as [`charpoly_division_free`] for a matrix given as rows; rejects
/// non-square input.
pub fn charpoly_of_rows(rows: &[Vec<Rational>]) -> Result<RatPoly> {
    Ok(RatPoly::new(berkowitz(rows)?))
}

/// `P(X, Y) = det(X I - L(Y))` computed by Berkowitz directly over `Z[Y]`.
pub fn spectral_polynomial(dp: &DiffusionPair) -> SpectralPolynomial {
    let coeffs = berkowitz(&symbolic_laplacian(dp)).expect("Laplacian is square");
    SpectralPolynomial::new(coeffs).expect("Laplacian charpoly is monic with zero constant term")
}

/// `P(X, Y)` by evaluation at `Y = 0, 1, ..., D` and exact interpolation.
///
/// Only practical for small label sums; kept as an independent route.
pub fn spectral_polynomial_by_interpolation(dp: &DiffusionPair) -> Result<SpectralPolynomial> {
    let d = dp.label_sum() as usize;
    let samples: Vec<(Rational, RatPoly)> = (0..=d)
        .into_par_iter()
        .map(|y| {
            let y = Rational::from(y);
            let cp = charpoly_division_free(&weighted_laplacian(dp, &y));
            (y, cp)
        })
        .collect();
    Ok(interpolate_spectral_poly(&samples, d, 0.0)?.poly)
}
