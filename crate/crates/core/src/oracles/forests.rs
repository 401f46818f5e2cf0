//! Spanning-forest enumeration and the forest expansion of `P(X, Y)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rug::Integer;

use crate::error::{Error, Result};
use crate::graph::{DiffusionPair, Edge, Graph, UnionFind};
use crate::poly::{SpectralPolynomial, UniPoly};

/// Default limit on the number of edges `enumerate_forests` accepts.
pub const DEFAULT_EDGE_CAP: usize = 20;

/// One spanning forest: indices into the graph's sorted edge list, and the
/// product of its component sizes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Forest {
    pub edges: Vec<usize>,
    pub gamma: u64,
}

/// All spanning forests of a graph, grouped by number of components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestFamily {
    n: usize,
    edges: Vec<Edge>,
    families: BTreeMap<usize, Vec<Forest>>,
}

impl ForestFamily {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The edge list the forest indices refer to.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Forests with exactly `i` components (empty slice if none).
    pub fn family(&self, i: usize) -> &[Forest] {
        self.families.get(&i).map_or(&[], Vec::as_slice)
    }

    pub fn families(&self) -> &BTreeMap<usize, Vec<Forest>> {
        &self.families
    }

    pub fn total(&self) -> usize {
        self.families.values().map(Vec::len).sum()
    }

    /// The family re-expressed over edge labels: for each `i`, a map from
    /// the sorted label set of a forest to its `gamma`.
    pub fn label_family(&self, labels: &[u64]) -> Result<LabelFamily> {
        if labels.len() != self.edges.len() {
            return Err(Error::DimensionMismatch {
                expected: self.edges.len(),
                got: labels.len(),
            });
        }
        let mut out = LabelFamily::new();
        for (&i, forests) in &self.families {
            let entry = out.entry(i).or_default();
            for f in forests {
                let mut ls: Vec<u64> = f.edges.iter().map(|&k| labels[k]).collect();
                ls.sort_unstable();
                entry.insert(ls, f.gamma);
            }
        }
        Ok(out)
    }

    /// Dump as lines `i gamma e1 e2 ... ek` with label-sorted subsets;
    /// edges are named by `labels`, or by 1-based edge index when `None`.
    pub fn to_text(&self, labels: Option<&[u64]>) -> Result<String> {
        let names: Vec<u64> = match labels {
            Some(ls) => ls.to_vec(),
            None => (1..=self.edges.len() as u64).collect(),
        };
        let fam = self.label_family(&names)?;
        Ok(label_family_to_text(&fam))
    }
}

/// Forest family keyed by label sets: `i -> {sorted labels -> gamma}`.
pub type LabelFamily = BTreeMap<usize, BTreeMap<Vec<u64>, u64>>;

pub fn label_family_to_text(fam: &LabelFamily) -> String {
    let mut out = String::new();
    for (i, forests) in fam.iter().rev() {
        for (ls, gamma) in forests {
            write!(out, "{i} {gamma}").unwrap();
            for l in ls {
                write!(out, " {l}").unwrap();
            }
            out.push('\n');
        }
    }
    out
}

pub fn label_family_from_text(text: &str) -> Result<LabelFamily> {
    let mut fam = LabelFamily::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: std::result::Result<Vec<u64>, _> =
            line.split_whitespace().map(str::parse::<u64>).collect();
        let nums = nums.map_err(|e| Error::Parse {
            line: k + 1,
            msg: e.to_string(),
        })?;
        if nums.len() < 2 {
            return Err(Error::Parse {
                line: k + 1,
                msg: "expected `i gamma labels...`".into(),
            });
        }
        let mut ls = nums[2..].to_vec();
        ls.sort_unstable();
        fam.entry(nums[0] as usize).or_default().insert(ls, nums[1]);
    }
    Ok(fam)
}

/// Every acyclic edge subset of `g`, grouped by component count.
pub fn enumerate_forests(g: &Graph) -> Result<ForestFamily> {
    enumerate_forests_capped(g, DEFAULT_EDGE_CAP)
}

pub fn enumerate_forests_capped(g: &Graph, cap: usize) -> Result<ForestFamily> {
    let m = g.num_edges();
    if m > cap {
        return Err(Error::EnumerationCap { edges: m, cap });
    }
    let n = g.n();
    let mut families: BTreeMap<usize, Vec<Forest>> = BTreeMap::new();
    let mut chosen = Vec::new();
    extend(g.edges(), 0, UnionFind::new(n), &mut chosen, &mut families);
    for fs in families.values_mut() {
        fs.sort();
    }
    Ok(ForestFamily {
        n,
        edges: g.edges().to_vec(),
        families,
    })
}

fn extend(
    edges: &[Edge],
    next: usize,
    mut uf: UnionFind,
    chosen: &mut Vec<usize>,
    out: &mut BTreeMap<usize, Vec<Forest>>,
) {
    if next == edges.len() {
        let gamma = uf.component_sizes().iter().map(|&s| s as u64).product();
        out.entry(uf.count()).or_default().push(Forest {
            edges: chosen.clone(),
            gamma,
        });
        return;
    }
    let (u, v) = edges[next];
    let mut with = uf.clone();
    if with.union(u - 1, v - 1) {
        chosen.push(next);
        extend(edges, next + 1, with, chosen, out);
        chosen.pop();
    }
    extend(edges, next + 1, uf, chosen, out);
}

/// `a_i(Y) = (-1)^(n-i) * sum over forests F with i components of
/// gamma(F) * Y^(sum of labels in F)`.
pub fn buslov_polynomial(dp: &DiffusionPair) -> Result<SpectralPolynomial> {
    let fam = enumerate_forests(dp.graph())?;
    let n = dp.n();
    let labels = dp.labels();
    let mut coeffs = vec![UniPoly::zero(); n + 1];
    for (&i, forests) in fam.families() {
        let sign: i64 = if (n - i).is_multiple_of(2) { 1 } else { -1 };
        for f in forests {
            let e: u64 = f.edges.iter().map(|&k| labels[k]).sum();
            coeffs[i].add_term(e, Integer::from(sign) * f.gamma);
        }
    }
    // the empty forest contributes gamma 1 to a_n but the constant term
    // a_0 is always absent since a forest has at least one component
    SpectralPolynomial::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::spectral_polynomial;

    #[test]
    fn k2_family() {
        let fam = enumerate_forests(&Graph::complete(2)).unwrap();
        assert_eq!(
            fam.family(1),
            &[Forest {
                edges: vec![0],
                gamma: 2
            }]
        );
        assert_eq!(
            fam.family(2),
            &[Forest {
                edges: vec![],
                gamma: 1
            }]
        );
        assert_eq!(fam.to_text(None).unwrap(), "2 1\n1 2 1\n");
    }

    #[test]
    fn k3_and_c4() {
        let fam = enumerate_forests(&Graph::complete(3)).unwrap();
        assert_eq!(fam.family(1).len(), 3);
        assert!(fam.family(1).iter().all(|f| f.gamma == 3));
        assert_eq!(fam.family(2).len(), 3);
        assert!(fam.family(2).iter().all(|f| f.gamma == 2));
        assert_eq!(fam.family(3).len(), 1);

        let c4 = enumerate_forests(&Graph::cycle(4)).unwrap();
        assert_eq!(c4.family(1).len(), 4);
        assert!(c4.family(1).iter().all(|f| f.gamma == 4));
    }

    #[test]
    fn buslov_examples() {
        let k2 = DiffusionPair::new(2, &[(1, 2, 1)]).unwrap();
        assert_eq!(
            buslov_polynomial(&k2).unwrap().to_string(),
            "X^2 + (-2*Y)*X"
        );

        let k3 = DiffusionPair::new_allow_repeated_labels(3, &[(1, 2, 1), (1, 3, 1), (2, 3, 1)])
            .unwrap();
        let p = buslov_polynomial(&k3).unwrap();
        assert_eq!(*p.coeff(2), UniPoly::monomial(-6, 1));
        assert_eq!(*p.coeff(1), UniPoly::monomial(9, 2));

        let path = DiffusionPair::new(3, &[(1, 2, 1), (2, 3, 2)]).unwrap();
        let p = buslov_polynomial(&path).unwrap();
        assert_eq!(*p.coeff(2), UniPoly::from_terms([(1, -2), (2, -2)]));
        assert_eq!(*p.coeff(1), UniPoly::monomial(3, 3));
        assert_eq!(p, spectral_polynomial(&path));
    }

    #[test]
    fn label_family_text_round_trip() {
        let dp = DiffusionPair::new(3, &[(1, 2, 1), (1, 3, 2), (2, 3, 4)]).unwrap();
        let fam = enumerate_forests(dp.graph())
            .unwrap()
            .label_family(dp.labels())
            .unwrap();
        let text = label_family_to_text(&fam);
        assert_eq!(label_family_from_text(&text).unwrap(), fam);
    }

    #[test]
    fn cap() {
        let g = Graph::complete(7);
        assert_eq!(
            enumerate_forests(&g).unwrap_err(),
            Error::EnumerationCap { edges: 21, cap: 20 }
        );
    }
}
