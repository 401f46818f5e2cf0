//! Matrix-tree counts and Kel'mans coefficients.

use std::collections::BTreeSet;

use rug::Integer;

use crate::graph::{Graph, Multigraph};

/// Number of spanning trees of a multigraph (parallel edges counted
/// separately), by a fraction-free determinant of the reduced Laplacian.
pub fn tree_count(mg: &Multigraph) -> Integer {
    let n = mg.n();
    if n <= 1 {
        return Integer::from(n);
    }
    let k = n - 1;
    // drop the last vertex
    let mut m = vec![vec![Integer::new(); k]; k];
    for &(u, v) in mg.edges() {
        let (i, j) = (u - 1, v - 1);
        if i < k {
            m[i][i] += 1;
        }
        if j < k {
            m[j][j] += 1;
        }
        if i < k && j < k {
            m[i][j] -= 1;
            m[j][i] -= 1;
        }
    }
    bareiss_det(m)
}

/// Determinant of an integer matrix by Bareiss elimination.
pub fn bareiss_det(mut m: Vec<Vec<Integer>>) -> Integer {
    let k = m.len();
    let mut sign = 1;
    let mut prev = Integer::from(1);
    for p in 0..k {
        if m[p][p] == 0 {
            match (p + 1..k).find(|&r| m[r][p] != 0) {
                Some(r) => {
                    m.swap(p, r);
                    sign = -sign;
                }
                None => return Integer::new(),
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let t = Integer::from(&m[i][j] * &m[p][p]) - Integer::from(&m[i][p] * &m[p][j]);
                m[i][j] = t / &prev;
            }
        }
        prev = m[p][p].clone();
    }
    if k == 0 {
        return Integer::from(1);
    }
    prev * sign
}

/// `(c_1, ..., c_{n-1})` with `c_k` the sum of `tree_count(G_S)` over vertex
/// subsets `S` of size `n - k`, so that
/// `det(X I - L) = X^n + sum_k (-1)^k c_k X^(n-k)`.
pub fn kelmans_coefficients(g: &Graph) -> Vec<Integer> {
    let n = g.n();
    let mut out = vec![Integer::new(); n.saturating_sub(1)];
    for mask in 1u64..(1u64 << n) {
        let size = mask.count_ones() as usize;
        if size == n {
            continue;
        }
        let s: BTreeSet<usize> = (0..n)
            .filter(|&v| mask >> v & 1 == 1)
            .map(|v| v + 1)
            .collect();
        let q = g.quotient(&s).expect("nonempty in-range subset");
        out[n - size - 1] += tree_count(&q);
    }
    out
}

/// Laplacian characteristic polynomial rebuilt from Kel'mans coefficients,
/// lowest degree first.
pub fn kelmans_charpoly(g: &Graph) -> Vec<Integer> {
    let n = g.n();
    let c = kelmans_coefficients(g);
    let mut out = vec![Integer::new(); n + 1];
    out[n] = Integer::from(1);
    for (idx, ck) in c.into_iter().enumerate() {
        let k = idx + 1;
        out[n - k] = if k % 2 == 0 { ck } else { -ck };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts() {
        assert_eq!(tree_count(&Multigraph::from(&Graph::complete(3))), 3);
        assert_eq!(tree_count(&Multigraph::new(2, [(1, 2), (1, 2)])), 2);
        assert_eq!(tree_count(&Multigraph::from(&Graph::complete(4))), 16);
        assert_eq!(tree_count(&Multigraph::from(&Graph::complete(6))), 1296);
        assert_eq!(tree_count(&Multigraph::from(&Graph::cycle(5))), 5);
        assert_eq!(tree_count(&Multigraph::from(&Graph::empty(2))), 0);
    }

    #[test]
    fn kelmans_examples() {
        assert_eq!(kelmans_coefficients(&Graph::complete(2)), vec![2]);
        assert_eq!(kelmans_coefficients(&Graph::complete(3)), vec![6, 9]);
        assert_eq!(kelmans_coefficients(&Graph::empty(2)), vec![0]);
        assert_eq!(kelmans_charpoly(&Graph::complete(3)), vec![0, 9, -6, 1]);
    }
}
