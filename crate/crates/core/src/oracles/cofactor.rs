//! `det(X I - L(Y))` by cofactor expansion with memoized minors. Shares no
//! code with the Berkowitz route.

use std::collections::HashMap;

use crate::graph::DiffusionPair;
use crate::matrix::symbolic_laplacian;
use crate::poly::{SpectralPolynomial, UniPoly};

/// Polynomial in `X` with `Z[Y]` coefficients, lowest degree first.
type XPoly = Vec<UniPoly>;

fn add_into(acc: &mut XPoly, p: &XPoly, negate: bool) {
    if acc.len() < p.len() {
        acc.resize(p.len(), UniPoly::zero());
    }
    for (a, b) in acc.iter_mut().zip(p) {
        *a = if negate { &*a - b } else { &*a + b };
    }
}

fn mul(a: &XPoly, b: &XPoly) -> XPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![UniPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

/// Spectral polynomial by Laplace expansion along rows.
pub fn cofactor_spectral_polynomial(dp: &DiffusionPair) -> SpectralPolynomial {
    let n = dp.n();
    let l = symbolic_laplacian(dp);
    // entry (i, j) of X I - L(Y)
    let entry = |i: usize, j: usize| -> XPoly {
        let c = -&l[i][j];
        if i == j {
            vec![c, UniPoly::one()]
        } else {
            vec![c]
        }
    };
    let mut memo: HashMap<u32, XPoly> = HashMap::new();
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let det = minor(full, n, &entry, &mut memo);
    let mut coeffs = det;
    coeffs.resize(n + 1, UniPoly::zero());
    SpectralPolynomial::new(coeffs).expect("Laplacian charpoly is monic with zero constant term")
}

/// Determinant of the submatrix on rows `n - |cols| ..` and columns `cols`.
fn minor(
    cols: u32,
    n: usize,
    entry: &dyn Fn(usize, usize) -> XPoly,
    memo: &mut HashMap<u32, XPoly>,
) -> XPoly {
    if cols == 0 {
        return vec![UniPoly::one()];
    }
    if let Some(d) = memo.get(&cols) {
        return d.clone();
    }
    let row = n - cols.count_ones() as usize;
    let mut acc: XPoly = Vec::new();
    let mut pos = 0;
    for j in 0..n {
        if cols >> j & 1 == 0 {
            continue;
        }
        let e = entry(row, j);
        if e.iter().any(|c| !c.is_zero()) {
            let sub = minor(cols & !(1 << j), n, entry, memo);
            add_into(&mut acc, &mul(&e, &sub), pos % 2 == 1);
        }
        pos += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}
