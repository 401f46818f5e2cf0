//! Graph isomorphism by canonical labeling.
//!
//! Vertices are first split into classes by iterated degree refinement
//! (a vertex's color is refined by the multiset of its neighbours' colors).
//! The refined partition is isomorphism invariant, so the canonical form
//! comes from the ordering, among those keeping the classes in order, that
//! maximizes the column-wise adjacency code. Orderings are built by
//! backtracking with exact prefix pruning, fast enough for n <= 10.

use std::collections::BTreeMap;

use crate::graph::{Edge, Graph};

/// Canonical edge list: equal for two graphs iff they are isomorphic.
pub fn canonical_form(g: &Graph) -> (usize, Vec<Edge>) {
    let n = g.n();
    let adj = g.adjacency();
    let colors = refine(&adj);
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        classes.entry(colors[v]).or_default().push(v);
    }
    // positions 0..n are filled class by class
    let slots: Vec<Vec<usize>> = classes.into_values().collect();
    let mut adj_matrix = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        adj_matrix[u - 1][v - 1] = true;
        adj_matrix[v - 1][u - 1] = true;
    }
    let mut search = Search::new(adj_matrix);
    search.run(&slots, 0);
    let best = search.best.expect("at least one ordering exists");
    (n, best)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n()
        && a.num_edges() == b.num_edges()
        && {
            let mut da = a.degrees();
            let mut db = b.degrees();
            da.sort_unstable();
            db.sort_unstable();
            da == db
        }
        && canonical_form(a) == canonical_form(b)
}

/// Invariant vertex coloring by iterated neighbourhood refinement. Colors
/// are ranks of signatures, so they do not depend on vertex numbering.
fn refine(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut colors: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut classes = count_distinct(&colors);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = adj[v].iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| sorted.binary_search(s).expect("signature present"))
            .collect();
        let k = sorted.len();
        colors = next;
        if k == classes {
            return colors;
        }
        classes = k;
    }
}

fn count_distinct(xs: &[usize]) -> usize {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

struct Search {
    adj: Vec<Vec<bool>>,
    /// `order[p]` is the original vertex placed at canonical position `p`.
    order: Vec<usize>,
    used: Vec<bool>,
    /// Code of the current prefix: for each position `k`, its adjacency bits
    /// to positions `0..k`. The code of a prefix is a prefix of the code of
    /// every completion, so comparing codes prunes exactly.
    code: Vec<bool>,
    best_code: Option<Vec<bool>>,
    best: Option<Vec<Edge>>,
}

impl Search {
    fn new(adj: Vec<Vec<bool>>) -> Self {
        let n = adj.len();
        Self {
            adj,
            order: Vec::with_capacity(n),
            used: vec![false; n],
            code: Vec::with_capacity(n * n / 2),
            best_code: None,
            best: None,
        }
    }

    fn run(&mut self, slots: &[Vec<usize>], class: usize) {
        let n = self.adj.len();
        if self.order.len() == n {
            if self.best_code.as_ref().is_none_or(|b| self.code > *b) {
                self.best_code = Some(self.code.clone());
                self.best = Some(self.edges());
            }
            return;
        }
        let mut class = class;
        while slots[class].iter().all(|&v| self.used[v]) {
            class += 1;
        }
        for idx in 0..slots[class].len() {
            let v = slots[class][idx];
            if self.used[v] {
                continue;
            }
            let before = self.code.len();
            for &w in &self.order {
                self.code.push(self.adj[v][w]);
            }
            let keep = match &self.best_code {
                Some(b) => self.code.as_slice() >= &b[..self.code.len()],
                None => true,
            };
            if keep {
                self.used[v] = true;
                self.order.push(v);
                self.run(slots, class);
                self.order.pop();
                self.used[v] = false;
            }
            self.code.truncate(before);
        }
    }

    fn edges(&self) -> Vec<Edge> {
        let n = self.order.len();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if self.adj[self.order[a]][self.order[b]] {
                    edges.push((a + 1, b + 1));
                }
            }
        }
        edges
    }
}
