//! Rebuilding a graph from its spectral polynomial.
//!
//! Under subset-sum-distinct labels every monomial of `a_i(Y)` is one
//! spanning forest with `i` components: its exponent names the edge labels
//! and its magnitude is the product of the component sizes. Decoding gives
//! that family; realization places a maximal forest `S` (whose shape follows
//! from which pairs of its edges touch), then puts every other label across
//! the endpoints of its fundamental circuit in `S`, and finally checks the
//! whole family against a fresh enumeration.

use std::collections::{BTreeMap, BTreeSet};

use rug::Integer;

use crate::error::{Error, Result};
use crate::graph::{DiffusionPair, Edge};
use crate::oracles::{enumerate_forests, LabelFamily};
use crate::poly::SpectralPolynomial;

/// Placement steps allowed before giving up.
const SEARCH_LIMIT: usize = 1_000_000;

/// Spanning-forest family read off a spectral polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodedFamily {
    pub n: usize,
    /// Distinct edge labels, increasing.
    pub labels: Vec<u64>,
    /// `i ->` {sorted label subset `->` coefficient magnitude}.
    pub families: LabelFamily,
}

impl DecodedFamily {
    pub fn family(&self, i: usize) -> Option<&BTreeMap<Vec<u64>, u64>> {
        self.families.get(&i)
    }
}

pub fn decode_forest_family(p: &SpectralPolynomial) -> Result<DecodedFamily> {
    let n = p.n();
    let mut labels: Vec<u64> = if n >= 1 {
        p.coeff(n - 1).terms().map(|(e, _)| e).collect()
    } else {
        Vec::new()
    };
    labels.sort_unstable();
    let mut families = LabelFamily::new();
    for i in 1..=n {
        let sign_positive = (n - i).is_multiple_of(2);
        let size = n - i;
        let valid = gamma_values(n, i);
        for (e, c) in p.coeff(i).terms() {
            let magnitude = c.clone().abs();
            if (*c > 0) != sign_positive || magnitude.to_u64().is_none_or(|m| !valid.contains(&m)) {
                return Err(Error::InconsistentMagnitude {
                    exponent: e,
                    magnitude: c.to_string(),
                });
            }
            let subset = decompose(e, size, &labels)?;
            families
                .entry(i)
                .or_default()
                .insert(subset, magnitude.to_u64().expect("checked above"));
        }
    }
    Ok(DecodedFamily {
        n,
        labels,
        families,
    })
}

/// Products of the part sizes over all partitions of `n` into `i` parts.
fn gamma_values(n: usize, i: usize) -> BTreeSet<u64> {
    fn go(rest: usize, parts: usize, max: usize, prod: u64, out: &mut BTreeSet<u64>) {
        if parts == 0 {
            if rest == 0 {
                out.insert(prod);
            }
            return;
        }
        for s in 1..=max.min(rest + 1 - parts) {
            go(rest - s, parts - 1, s, prod * s as u64, out);
        }
    }
    let mut out = BTreeSet::new();
    if i >= 1 && i <= n {
        go(n, i, n, 1, &mut out);
    }
    out
}

/// The unique `size`-subset of `labels` summing to `target`.
fn decompose(target: u64, size: usize, labels: &[u64]) -> Result<Vec<u64>> {
    if labels.iter().all(|l| l.is_power_of_two()) {
        let subset: Vec<u64> = labels.iter().copied().filter(|l| target & l != 0).collect();
        let sum: u64 = subset.iter().sum();
        return if sum == target && subset.len() == size {
            Ok(subset)
        } else {
            Err(Error::NoDecomposition(target))
        };
    }
    let mut desc = labels.to_vec();
    desc.sort_unstable_by(|a, b| b.cmp(a));
    let mut suffix = vec![0u64; desc.len() + 1];
    for k in (0..desc.len()).rev() {
        suffix[k] = suffix[k + 1] + desc[k];
    }
    let mut found: Vec<Vec<u64>> = Vec::new();
    let mut chosen = Vec::new();
    subset_sum(&desc, &suffix, 0, target, size, &mut chosen, &mut found);
    match found.len() {
        0 => Err(Error::NoDecomposition(target)),
        1 => {
            let mut s = found.pop().unwrap();
            s.sort_unstable();
            Ok(s)
        }
        _ => Err(Error::MultipleDecompositions(target)),
    }
}

fn subset_sum(
    desc: &[u64],
    suffix: &[u64],
    k: usize,
    rest: u64,
    size: usize,
    chosen: &mut Vec<u64>,
    found: &mut Vec<Vec<u64>>,
) {
    if found.len() > 1 {
        return;
    }
    if chosen.len() == size {
        if rest == 0 {
            found.push(chosen.clone());
        }
        return;
    }
    if k == desc.len() || suffix[k] < rest || desc.len() - k < size - chosen.len() {
        return;
    }
    if desc[k] <= rest {
        chosen.push(desc[k]);
        subset_sum(desc, suffix, k + 1, rest - desc[k], size, chosen, found);
        chosen.pop();
    }
    subset_sum(desc, suffix, k + 1, rest, size, chosen, found);
}

/// A labelled graph whose forest family is exactly `fam`.
pub fn realize_graph(fam: &DecodedFamily) -> Result<DiffusionPair> {
    let n = fam.n;
    if n == 0 {
        return Err(Error::NotRealizable("no vertices".into()));
    }
    let (&b0, maximal) = fam
        .families
        .iter()
        .find(|(_, f)| !f.is_empty())
        .ok_or_else(|| Error::NotRealizable("empty family".into()))?;
    let s: Vec<u64> = maximal.keys().next().expect("nonempty").clone();
    if s.len() != n - b0 {
        return Err(Error::NotRealizable(
            "maximal forest has the wrong size".into(),
        ));
    }
    let labels_in_forests: BTreeSet<u64> = fam
        .families
        .values()
        .flat_map(|f| f.keys().flatten().copied())
        .collect();
    if labels_in_forests != fam.labels.iter().copied().collect() {
        return Err(Error::NotRealizable("labels and forests disagree".into()));
    }

    let touching = |a: u64, b: u64| -> Result<bool> {
        let mut key = vec![a, b];
        key.sort_unstable();
        match fam.family(n - 2).and_then(|f| f.get(&key)) {
            Some(3) => Ok(true),
            Some(4) => Ok(false),
            _ => Err(Error::NotRealizable(format!(
                "forest {{{a}, {b}}} missing or with unexpected magnitude"
            ))),
        }
    };
    let placed = place_forest(n, &s, &touching)?;

    let mut edge_of: BTreeMap<u64, Edge> = placed;
    for &e in &fam.labels {
        if edge_of.contains_key(&e) {
            continue;
        }
        let circuit: Vec<u64> = s
            .iter()
            .copied()
            .filter(|&f| {
                let mut swapped: Vec<u64> = s.iter().copied().filter(|&x| x != f).collect();
                swapped.push(e);
                swapped.sort_unstable();
                maximal.contains_key(&swapped)
            })
            .collect();
        let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
        for f in &circuit {
            let (u, v) = edge_of[f];
            *degree.entry(u).or_default() += 1;
            *degree.entry(v).or_default() += 1;
        }
        let ends: Vec<usize> = degree
            .iter()
            .filter(|(_, &d)| d == 1)
            .map(|(&v, _)| v)
            .collect();
        if circuit.is_empty() || ends.len() != 2 || degree.values().any(|&d| d > 2) {
            return Err(Error::NotRealizable(format!(
                "label {e} has no path-shaped fundamental circuit"
            )));
        }
        edge_of.insert(e, (ends[0], ends[1]));
    }

    let triples: Vec<(usize, usize, i64)> = edge_of
        .iter()
        .map(|(&l, &(u, v))| (u, v, l as i64))
        .collect();
    let dp = DiffusionPair::new(n, &triples).map_err(|e| Error::NotRealizable(e.to_string()))?;
    let got = enumerate_forests(dp.graph())?.label_family(dp.labels())?;
    let want: LabelFamily = fam
        .families
        .iter()
        .filter(|(_, f)| !f.is_empty())
        .map(|(&i, f)| (i, f.clone()))
        .collect();
    if got != want {
        return Err(Error::NotRealizable(
            "realized graph has a different forest family".into(),
        ));
    }
    Ok(dp)
}

/// Places the forest with edge labels `s` on vertices `1..=n`, given which
/// pairs of edges share an endpoint.
fn place_forest(
    n: usize,
    s: &[u64],
    touching: &dyn Fn(u64, u64) -> Result<bool>,
) -> Result<BTreeMap<u64, Edge>> {
    let m = s.len();
    let mut adj = vec![vec![false; m]; m];
    for a in 0..m {
        for b in a + 1..m {
            let t = touching(s[a], s[b])?;
            adj[a][b] = t;
            adj[b][a] = t;
        }
    }
    // breadth-first order inside each component of the line graph
    let mut order = Vec::with_capacity(m);
    let mut seen = vec![false; m];
    for root in 0..m {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let start = order.len();
        order.push(root);
        let mut head = start;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for y in 0..m {
                if adj[x][y] && !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
    }
    let mut ends: Vec<Option<Edge>> = vec![None; m];
    let mut budget = SEARCH_LIMIT;
    if !place(&order, 0, &adj, &mut ends, 0, &mut budget) {
        return Err(if budget == 0 {
            Error::SearchCap
        } else {
            Error::NotRealizable("edge contacts do not describe a forest".into())
        });
    }
    let used = ends
        .iter()
        .flatten()
        .flat_map(|&(u, v)| [u, v])
        .max()
        .unwrap_or(0);
    if used > n {
        return Err(Error::NotRealizable(
            "forest needs more vertices than available".into(),
        ));
    }
    Ok(s.iter()
        .zip(ends)
        .map(|(&l, e)| (l, e.expect("placed")))
        .collect())
}

/// Vertices are numbered `1..` in order of creation; `next` is the count so far.
fn place(
    order: &[usize],
    k: usize,
    adj: &[Vec<bool>],
    ends: &mut [Option<Edge>],
    next: usize,
    budget: &mut usize,
) -> bool {
    if k == order.len() {
        return true;
    }
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    let e = order[k];
    let anchor = order[..k].iter().copied().find(|&f| adj[e][f]);
    let candidates: Vec<(usize, usize, usize)> = match anchor {
        None => vec![(next + 1, next + 2, next + 2)],
        Some(f) => {
            let (a, b) = ends[f].expect("placed earlier");
            vec![(a, next + 1, next + 1), (b, next + 1, next + 1)]
        }
    };
    for (u, v, count) in candidates {
        let ok = order[..k].iter().all(|&f| {
            let (a, b) = ends[f].expect("placed earlier");
            let shares = a == u || b == u || a == v || b == v;
            shares == adj[e][f]
        });
        if ok {
            ends[e] = Some((u, v));
            if place(order, k + 1, adj, ends, count, budget) {
                return true;
            }
            ends[e] = None;
        }
    }
    false
}

/// Decodes the forest family of `p` and realizes it.
pub fn reconstruct_from_polynomial(p: &SpectralPolynomial) -> Result<DiffusionPair> {
    realize_graph(&decode_forest_family(p)?)
}

/// Largest forest coefficient magnitude in `p`; digit-based recovery from
/// one level needs a prime above this.
pub fn max_coefficient(p: &SpectralPolynomial) -> Integer {
    p.coeffs()
        .iter()
        .flat_map(|a| a.terms().map(|(_, c)| c.clone().abs()))
        .max()
        .unwrap_or_default()
}
