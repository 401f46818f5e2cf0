//! Laplacian-type matrices: the symbolic Laplacian over `Z[Y]`, exact level
//! Laplacians, edge-set Laplacians `U(E)` and their seminorms.

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::graph::{DiffusionPair, Edge, Graph};
use crate::poly::{pow_rational, UniPoly};

/// Square matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Rational::new(); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self { n, data })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    /// `A ⊗ I_m + I_n ⊗ B`.
    pub fn kronecker_sum(&self, other: &ExactMatrix) -> ExactMatrix {
        let (n, m) = (self.n, other.n);
        let mut out = ExactMatrix::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                for k in 0..m {
                    *out.get_mut(i * m + k, j * m + k) += self.get(i, j);
                }
            }
        }
        for i in 0..n {
            for k in 0..m {
                for l in 0..m {
                    *out.get_mut(i * m + k, i * m + l) += other.get(k, l);
                }
            }
        }
        out
    }

    /// `v^T M v` evaluated at the precision of `v`.
    pub fn quadratic_form(&self, v: &[Float]) -> Result<Float> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        let prec = v.first().map_or(64, Float::prec);
        let mut acc = Float::new(prec);
        for i in 0..self.n {
            for j in 0..self.n {
                let m = self.get(i, j);
                if *m != 0 {
                    let t = Float::with_val(prec, &v[i] * &v[j]);
                    acc += t * m;
                }
            }
        }
        Ok(acc)
    }
}

/// Laplacian of `dp` with edge weights `Y^alpha`, entries in `Z[Y]`.
pub fn symbolic_laplacian(dp: &DiffusionPair) -> Vec<Vec<UniPoly>> {
    let n = dp.n();
    let mut m = vec![vec![UniPoly::zero(); n]; n];
    for (u, v, a) in dp.weighted_edges() {
        let (i, j) = (u - 1, v - 1);
        let w = UniPoly::monomial(1, a);
        m[i][j] = &m[i][j] - &w;
        m[j][i] = &m[j][i] - &w;
        m[i][i] = &m[i][i] + &w;
        m[j][j] = &m[j][j] + &w;
    }
    m
}

/// The level-`r` Laplacian: weights `q^(alpha (1 - r))`, exact for every `r`.
pub fn level_laplacian(dp: &DiffusionPair, q: u64, r: i64) -> Result<ExactMatrix> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!(
            "q must be at least 2, got {q}"
        )));
    }
    Ok(weighted_laplacian(dp, &level_node(q, r)))
}

/// `y_r = q^(1 - r)`.
pub fn level_node(q: u64, r: i64) -> Rational {
    let e = 1 - r;
    let base = Rational::from(q);
    if e >= 0 {
        pow_rational(&base, e as u64)
    } else {
        pow_rational(&base, e.unsigned_abs()).recip()
    }
}

/// Laplacian of `dp` with edge weights `y^alpha`.
pub fn weighted_laplacian(dp: &DiffusionPair, y: &Rational) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(dp.n());
    for (u, v, a) in dp.weighted_edges() {
        let w = pow_rational(y, a);
        let (i, j) = (u - 1, v - 1);
        *m.get_mut(i, j) -= &w;
        *m.get_mut(j, i) -= &w;
        *m.get_mut(i, i) += &w;
        *m.get_mut(j, j) += &w;
    }
    m
}

/// Ordinary combinatorial Laplacian `D - A`.
pub fn laplacian(g: &Graph) -> ExactMatrix {
    edge_set_laplacian(g.n(), g.edges()).expect("graph edges are valid pairs")
}

/// `U(E) = sum of U(k, l)` over the pairs; duplicates count twice.
pub fn edge_set_laplacian(n: usize, pairs: &[Edge]) -> Result<ExactMatrix> {
    let mut m = ExactMatrix::zeros(n);
    for &(k, l) in pairs {
        check_pair(n, k, l)?;
        let (i, j) = (k - 1, l - 1);
        *m.get_mut(i, i) += 1;
        *m.get_mut(j, j) += 1;
        *m.get_mut(i, j) -= 1;
        *m.get_mut(j, i) -= 1;
    }
    Ok(m)
}

fn check_pair(n: usize, k: usize, l: usize) -> Result<()> {
    if k == l {
        return Err(Error::SelfLoop(k));
    }
    for w in [k, l] {
        if w == 0 || w > n {
            return Err(Error::VertexOutOfRange { vertex: w, n });
        }
    }
    Ok(())
}

/// `||v||_E^2 = sum over (k, l) in E of (v_k - v_l)^2`. Vertices are 1-based
/// and must lie within `1..=v.len()`.
pub fn seminorm_sq(v: &[Float], pairs: &[Edge]) -> Result<Float> {
    let n = v.len();
    let prec = v.first().map_or(64, Float::prec);
    let mut acc = Float::new(prec);
    for &(k, l) in pairs {
        if k == 0 || l == 0 || k > n || l > n {
            return Err(Error::DimensionMismatch {
                expected: k.max(l),
                got: n,
            });
        }
        if k == l {
            return Err(Error::SelfLoop(k));
        }
        let d = Float::with_val(prec, &v[k - 1] - &v[l - 1]);
        acc += d.square();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(m: &ExactMatrix) -> Vec<Vec<i64>> {
        (0..m.n())
            .map(|i| {
                m.row(i)
                    .iter()
                    .map(|x| x.numer().to_i64().unwrap())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn symbolic_k2_and_path() {
        let k2 = DiffusionPair::new(2, &[(1, 2, 1)]).unwrap();
        let m = symbolic_laplacian(&k2);
        assert_eq!(m[0][0], UniPoly::monomial(1, 1));
        assert_eq!(m[0][1], UniPoly::monomial(-1, 1));

        let p = DiffusionPair::new(3, &[(1, 2, 1), (2, 3, 2)]).unwrap();
        let m = symbolic_laplacian(&p);
        assert_eq!(m[1][1], UniPoly::from_terms([(1, 1), (2, 1)]));
        assert_eq!(m[1][2], UniPoly::monomial(-1, 2));
        assert!(m[0][2].is_zero());
        for row in &m {
            let s = row.iter().fold(UniPoly::zero(), |acc, x| &acc + x);
            assert!(s.is_zero());
        }
    }

    #[test]
    fn level_laplacian_k2() {
        let k2 = DiffusionPair::new(2, &[(1, 2, 1)]).unwrap();
        assert_eq!(
            ints(&level_laplacian(&k2, 5, 1).unwrap()),
            vec![vec![1, -1], vec![-1, 1]]
        );
        assert_eq!(
            ints(&level_laplacian(&k2, 5, 0).unwrap()),
            vec![vec![5, -5], vec![-5, 5]]
        );
        let m = level_laplacian(&k2, 5, 2).unwrap();
        assert_eq!(*m.get(0, 1), Rational::from((-1, 5)));
        assert!(level_laplacian(&k2, 1, 0).is_err());
    }

    #[test]
    fn edge_set_examples() {
        assert_eq!(
            ints(&edge_set_laplacian(2, &[(1, 2)]).unwrap()),
            vec![vec![1, -1], vec![-1, 1]]
        );
        assert_eq!(edge_set_laplacian(3, &[]).unwrap(), ExactMatrix::zeros(3));
        assert_eq!(
            ints(&edge_set_laplacian(3, &[(1, 2), (2, 3)]).unwrap()),
            vec![vec![1, -1, 0], vec![-1, 2, -1], vec![0, -1, 1]]
        );
        assert_eq!(edge_set_laplacian(3, &[(2, 2)]), Err(Error::SelfLoop(2)));
    }

    #[test]
    fn seminorm_examples() {
        let f = |xs: &[i64]| {
            xs.iter()
                .map(|&x| Float::with_val(128, x))
                .collect::<Vec<_>>()
        };
        assert_eq!(seminorm_sq(&f(&[1, 0]), &[(1, 2)]).unwrap(), 1);
        assert_eq!(seminorm_sq(&f(&[7, 7, 7]), &[(1, 2), (1, 3)]).unwrap(), 0);
        let v = f(&[1, 2, 4]);
        let pairs = [(1, 2), (2, 3)];
        assert_eq!(seminorm_sq(&v, &pairs).unwrap(), 5);
        let q = edge_set_laplacian(3, &pairs)
            .unwrap()
            .quadratic_form(&v)
            .unwrap();
        assert_eq!(q, 5);
        assert!(seminorm_sq(&f(&[1, 2]), &[(1, 3)]).is_err());
    }

    #[test]
    fn kronecker_sum_matches_product_laplacian() {
        let k2 = Graph::complete(2);
        let p3 = Graph::path(3);
        let lhs = laplacian(&k2.cartesian_product(&p3));
        let rhs = laplacian(&k2).kronecker_sum(&laplacian(&p3));
        assert_eq!(lhs, rhs);
    }
}
