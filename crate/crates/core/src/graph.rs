//! Simple graphs, multigraphs and diffusion pairs (graphs with distinct
//! positive integer edge labels), plus the graph text format.
//!
//! Vertices are numbered `1..=n`; an edge is stored as `(u, v)` with `u < v`
//! and edge lists are kept sorted, which makes every derived object
//! (matrices, canonical forms, text output) deterministic.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Edge = (usize, usize);

fn normalize(u: usize, v: usize, n: usize) -> Result<Edge> {
    if u == v {
        return Err(Error::SelfLoop(u));
    }
    for w in [u, v] {
        if w == 0 || w > n {
            return Err(Error::VertexOutOfRange { vertex: w, n });
        }
    }
    Ok((u.min(v), u.max(v)))
}

/// Finite simple undirected graph on `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "graph needs at least one vertex".into(),
            ));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            let e = normalize(u, v, n)?;
            if !set.insert(e) {
                return Err(Error::DuplicateEdge(e.0, e.1));
            }
        }
        Ok(Self {
            n,
            edges: set.into_iter().collect(),
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        Self { n, edges }
    }

    pub fn path(n: usize) -> Self {
        Self {
            n,
            edges: (1..n).map(|u| (u, u + 1)).collect(),
        }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Self::new(n, (1..=n).map(|u| (u, u % n + 1))).expect("cycle is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted edge list.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u - 1] += 1;
            d[v - 1] += 1;
        }
        d
    }

    /// 0-based adjacency lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u - 1].push(v - 1);
            adj[v - 1].push(u - 1);
        }
        adj
    }

    /// Number of connected components (isolated vertices count).
    pub fn num_components(&self) -> usize {
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.union(u - 1, v - 1);
        }
        uf.count()
    }

    pub fn is_connected(&self) -> bool {
        self.num_components() == 1
    }

    /// Vertex set `(V \ S) ∪ {s*}`, where `s*` takes the position of `min S`;
    /// loops are dropped and parallel edges kept.
    pub fn quotient(&self, subset: &BTreeSet<usize>) -> Result<Multigraph> {
        let first = *subset.iter().next().ok_or(Error::EmptySubset)?;
        for &s in subset {
            if s == 0 || s > self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: s,
                    n: self.n,
                });
            }
        }
        let mut new_index = vec![0usize; self.n + 1];
        let mut next = 0;
        for v in 1..=self.n {
            if !subset.contains(&v) || v == first {
                next += 1;
                new_index[v] = next;
            }
        }
        for &s in subset {
            new_index[s] = new_index[first];
        }
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (new_index[u], new_index[v]));
        Ok(Multigraph::new(next, edges))
    }

    /// Cartesian product; vertex `(u, x)` becomes `(u - 1) * h.n() + x`.
    pub fn cartesian_product(&self, h: &Graph) -> Graph {
        let m = h.n;
        let idx = |u: usize, x: usize| (u - 1) * m + x;
        let mut edges = Vec::new();
        for u in 1..=self.n {
            for &(x, y) in &h.edges {
                edges.push((idx(u, x), idx(u, y)));
            }
        }
        for &(u, v) in &self.edges {
            for x in 1..=m {
                edges.push((idx(u, x), idx(v, x)));
            }
        }
        Graph::new(self.n * m, edges).expect("product of simple graphs is simple")
    }

    /// Relabels vertices: vertex `v` becomes `perm[v - 1]` (1-based image).
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Graph::new(
            self.n,
            self.edges.iter().map(|&(u, v)| (perm[u - 1], perm[v - 1])),
        )
        .expect("permutation of a simple graph is simple")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for (u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    /// Reads the graph text format, ignoring any labels.
    pub fn from_text(text: &str) -> Result<Self> {
        let parsed = parse_graph_text(text)?;
        Graph::new(parsed.n, parsed.edges.iter().map(|&(u, v, _)| (u, v)))
    }
}

/// Undirected multigraph: parallel edges allowed, loops dropped on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<Edge>,
}

impl Multigraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .filter(|(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        Self { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `(edge, multiplicity)` pairs in sorted order.
    pub fn multiplicities(&self) -> Vec<(Edge, usize)> {
        let mut out: Vec<(Edge, usize)> = Vec::new();
        for &e in &self.edges {
            match out.last_mut() {
                Some((last, k)) if *last == e => *k += 1,
                _ => out.push((e, 1)),
            }
        }
        out
    }
}

impl From<&Graph> for Multigraph {
    fn from(g: &Graph) -> Self {
        Multigraph {
            n: g.n,
            edges: g.edges.clone(),
        }
    }
}

/// A graph together with pairwise distinct positive integer edge labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffusionPair {
    graph: Graph,
    /// `labels[i]` belongs to `graph.edges()[i]`.
    labels: Vec<u64>,
    subset_sum_distinct: bool,
}

impl DiffusionPair {
    /// Builds and validates a pair from `(u, v, alpha)` triples.
    pub fn new(n: usize, weighted_edges: &[(usize, usize, i64)]) -> Result<Self> {
        Self::build(n, weighted_edges, true)
    }

    /// Like [`DiffusionPair::new`] but accepts repeated labels. Only meant
    /// for oracle checks where the determinant identities still hold.
    pub fn new_allow_repeated_labels(
        n: usize,
        weighted_edges: &[(usize, usize, i64)],
    ) -> Result<Self> {
        Self::build(n, weighted_edges, false)
    }

    fn build(n: usize, weighted_edges: &[(usize, usize, i64)], distinct: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "graph needs at least one vertex".into(),
            ));
        }
        let mut seen_edges = HashSet::new();
        let mut seen_labels = HashSet::new();
        let mut triples = Vec::with_capacity(weighted_edges.len());
        for &(u, v, alpha) in weighted_edges {
            let e = normalize(u, v, n)?;
            if !seen_edges.insert(e) {
                return Err(Error::DuplicateEdge(e.0, e.1));
            }
            if alpha <= 0 {
                return Err(Error::NonPositiveLabel(alpha));
            }
            let alpha = alpha as u64;
            if distinct && !seen_labels.insert(alpha) {
                return Err(Error::DuplicateLabel(alpha));
            }
            triples.push((e, alpha));
        }
        triples.sort_unstable();
        let graph = Graph {
            n,
            edges: triples.iter().map(|(e, _)| *e).collect(),
        };
        let labels = triples.into_iter().map(|(_, a)| a).collect();
        Ok(Self {
            graph,
            labels,
            subset_sum_distinct: false,
        })
    }

    /// Attaches labels to the graph's sorted edge list.
    pub fn from_graph(graph: &Graph, labels: &[u64]) -> Result<Self> {
        if labels.len() != graph.num_edges() {
            return Err(Error::DimensionMismatch {
                expected: graph.num_edges(),
                got: labels.len(),
            });
        }
        let triples: Vec<(usize, usize, i64)> = graph
            .edges()
            .iter()
            .zip(labels)
            .map(|(&(u, v), &a)| (u, v, i64::try_from(a).unwrap_or(-1)))
            .collect();
        Self::new(graph.n(), &triples)
    }

    /// Pair with the powers-of-two labels `1, 2, 4, ...` in sorted edge order.
    pub fn with_powers_of_two(graph: &Graph) -> Result<Self> {
        let labels = sum_distinct_labels(graph.num_edges(), &LabelScheme::PowersOfTwo)?;
        let mut dp = Self::from_graph(graph, &labels)?;
        dp.subset_sum_distinct = true;
        Ok(dp)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// `(u, v, alpha)` in sorted edge order.
    pub fn weighted_edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.graph
            .edges
            .iter()
            .zip(&self.labels)
            .map(|(&(u, v), &a)| (u, v, a))
    }

    /// `D = sum of all labels`, the Y-degree bound of the spectral polynomial.
    pub fn label_sum(&self) -> u64 {
        self.labels.iter().sum()
    }

    pub fn max_label(&self) -> u64 {
        self.labels.iter().copied().max().unwrap_or(0)
    }

    /// Runs the subset-sum check and records the result.
    pub fn verify_subset_sum_distinct(&mut self) -> bool {
        self.subset_sum_distinct = is_subset_sum_distinct(&self.labels);
        self.subset_sum_distinct
    }

    pub fn is_subset_sum_distinct(&self) -> bool {
        self.subset_sum_distinct
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.graph.n, self.labels.len());
        for (u, v, a) in self.weighted_edges() {
            let _ = writeln!(s, "{u} {v} {a}");
        }
        s
    }

    /// Reads the graph text format; missing labels default to 1.
    pub fn from_text(text: &str) -> Result<Self> {
        let parsed = parse_graph_text(text)?;
        let triples: Vec<(usize, usize, i64)> = parsed
            .edges
            .iter()
            .map(|&(u, v, a)| (u, v, a.unwrap_or(1)))
            .collect();
        Self::new(parsed.n, &triples)
    }

    /// As [`DiffusionPair::from_text`] but tolerating repeated labels.
    pub fn from_text_allow_repeated_labels(text: &str) -> Result<Self> {
        let parsed = parse_graph_text(text)?;
        let triples: Vec<(usize, usize, i64)> = parsed
            .edges
            .iter()
            .map(|&(u, v, a)| (u, v, a.unwrap_or(1)))
            .collect();
        Self::new_allow_repeated_labels(parsed.n, &triples)
    }

    /// True when every edge line of the text carries a label.
    pub fn text_has_labels(text: &str) -> Result<bool> {
        let parsed = parse_graph_text(text)?;
        Ok(!parsed.edges.is_empty() && parsed.edges.iter().all(|e| e.2.is_some()))
    }
}

struct ParsedGraph {
    n: usize,
    edges: Vec<(usize, usize, Option<i64>)>,
}

fn parse_graph_text(text: &str) -> Result<ParsedGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `n m` header".into(),
    })?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse {
            line: hl,
            msg: format!("bad header `{header}`"),
        })?;
    let [n, m] = nums[..] else {
        return Err(Error::Parse {
            line: hl,
            msg: "header must be `n m`".into(),
        });
    };
    let mut edges = Vec::with_capacity(m);
    for (ln, line) in lines {
        let bad = |msg: &str| Error::Parse {
            line: ln,
            msg: msg.to_string(),
        };
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 && parts.len() != 3 {
            return Err(bad("expected `u v [alpha]`"));
        }
        let u = parts[0].parse().map_err(|_| bad("bad vertex"))?;
        let v = parts[1].parse().map_err(|_| bad("bad vertex"))?;
        let a = match parts.get(2) {
            Some(t) => Some(t.parse().map_err(|_| bad("bad label"))?),
            None => None,
        };
        edges.push((u, v, a));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: hl,
            msg: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Ok(ParsedGraph { n, edges })
}

/// How edge labels are generated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelScheme {
    /// `1, 2, 4, ..., 2^(m-1)`.
    PowersOfTwo,
    Custom(Vec<u64>),
}

pub fn sum_distinct_labels(m: usize, scheme: &LabelScheme) -> Result<Vec<u64>> {
    match scheme {
        LabelScheme::PowersOfTwo => {
            if m > 63 {
                return Err(Error::InvalidArgument(format!(
                    "{m} power-of-two labels do not fit in 64 bits"
                )));
            }
            Ok((0..m).map(|i| 1u64 << i).collect())
        }
        LabelScheme::Custom(list) => {
            if list.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: list.len(),
                });
            }
            let mut seen = HashSet::new();
            for &a in list {
                if a == 0 {
                    return Err(Error::NonPositiveLabel(0));
                }
                if !seen.insert(a) {
                    return Err(Error::DuplicateLabel(a));
                }
            }
            Ok(list.clone())
        }
    }
}

/// True iff all `2^m` subset sums of `labels` are pairwise distinct.
pub fn is_subset_sum_distinct(labels: &[u64]) -> bool {
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    // superincreasing sequences are always fine
    let mut prefix: u128 = 0;
    let mut superincreasing = true;
    for &a in &sorted {
        if (a as u128) <= prefix {
            superincreasing = false;
            break;
        }
        prefix += a as u128;
    }
    if superincreasing {
        return true;
    }
    let total: u128 = sorted.iter().map(|&a| a as u128).sum();
    if total <= 1 << 24 {
        // reachable-sum sweep: a collision shows up as a sum reached twice
        let mut reach = vec![false; total as usize + 1];
        reach[0] = true;
        let mut hi = 0usize;
        for &a in &sorted {
            let a = a as usize;
            for s in (0..=hi).rev() {
                if reach[s] {
                    if reach[s + a] {
                        return false;
                    }
                    reach[s + a] = true;
                }
            }
            hi += a;
        }
        return true;
    }
    let mut seen = HashSet::with_capacity(1 << sorted.len().min(24));
    let m = sorted.len();
    for mask in 0u64..(1u64 << m) {
        let s: u128 = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| sorted[i] as u128)
            .sum();
        if !seen.insert(s) {
            return false;
        }
    }
    true
}

/// Plain union-find over `0..n`.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.components -= 1;
        true
    }

    pub fn count(&self) -> usize {
        self.components
    }

    /// Sizes of all components.
    pub fn component_sizes(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).filter(|&x| self.find(x) == x).collect();
        roots.into_iter().map(|x| self.size[x]).collect()
    }
}
