//! Splitting sampled spectra back into per-level multisets.
//!
//! The reference level `r = 1` has `y = 1` for every `q`, so its values are
//! the ones shared by all samples. The other levels are first tried as
//! multiplicative gap clusters. When the gaps do not give one cluster per
//! level (non-uniform labels make level spectra interleave), the level-0
//! block is searched for instead: its elementary symmetric functions are
//! integers whose base-`q` digits are the coefficients of `P`, which then
//! predicts every other level exactly.

use std::collections::BTreeMap;

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::matrix::level_node;
use crate::poly::pow_integer;

use super::sample::SpectrumSample;

/// Relative agreement required between values that should coincide.
const MATCH_BITS: i32 = 32;
/// Stop the level search after this many candidates.
const SEARCH_LIMIT: usize = 5_000_000;

/// Level multisets recovered from one sample.
#[derive(Clone, Debug, PartialEq)]
pub struct ClusterAssignment {
    pub q: u64,
    /// Level `r` to its `n` values (zeros included), sorted.
    pub levels: BTreeMap<i64, Vec<Float>>,
    /// Smallest ratio between the bottom of a level and the top of the
    /// level below it; below 1 when levels interleave.
    pub min_inter_gap: f64,
    /// Largest ratio between consecutive values inside one level.
    pub max_intra_gap: f64,
}

impl ClusterAssignment {
    pub fn level(&self, r: i64) -> Option<&[Float]> {
        self.levels.get(&r).map(Vec::as_slice)
    }
}

/// Splits each sample into levels using the default gap threshold `sqrt(q)`.
pub fn cluster_and_assign(samples: &[SpectrumSample]) -> Result<Vec<ClusterAssignment>> {
    cluster_and_assign_with(samples, None)
}

/// As [`cluster_and_assign`] with an explicit multiplicative gap threshold.
pub fn cluster_and_assign_with(
    samples: &[SpectrumSample],
    gap_threshold: Option<f64>,
) -> Result<Vec<ClusterAssignment>> {
    if samples.len() < 2 {
        return Err(Error::InvalidArgument(
            "clustering needs samples at two or more primes".into(),
        ));
    }
    let mut qs: Vec<u64> = samples.iter().map(|s| s.q).collect();
    qs.sort_unstable();
    qs.dedup();
    if qs.len() != samples.len() {
        return Err(Error::InvalidArgument("samples must use distinct q".into()));
    }
    let n = samples[0].n();
    let b0 = samples[0].components();
    for s in samples {
        if !(s.r_min <= 1 && 1 <= s.r_max) {
            return Err(Error::InvalidArgument(format!(
                "window [{}, {}] does not contain r = 1",
                s.r_min, s.r_max
            )));
        }
        if s.values.len() != n * s.width() || s.zero_count() != b0 * s.width() {
            return Err(Error::InvalidArgument(
                "samples disagree on vertex or component count".into(),
            ));
        }
    }
    let k = n - b0;
    let reference = shared_values(samples);
    if reference.len() != k {
        return Err(Error::AmbiguousClustering(format!(
            "{} values are shared by all samples, expected {k}",
            reference.len()
        )));
    }
    samples
        .iter()
        .map(|s| {
            let threshold = gap_threshold.unwrap_or((s.q as f64).sqrt());
            assign_one(s, &reference, b0, threshold)
        })
        .collect()
}

fn assign_one(
    s: &SpectrumSample,
    reference: &[Float],
    b0: usize,
    threshold: f64,
) -> Result<ClusterAssignment> {
    let k = reference.len();
    let prec = s.precision_bits;
    let reference: Vec<Float> = reference.iter().map(|v| Float::with_val(prec, v)).collect();
    let mut pool = s.nonzero();
    if !remove_matching(&mut pool, &reference) {
        return Err(Error::AmbiguousClustering(format!(
            "reference values not found in the q={} sample",
            s.q
        )));
    }
    let ctx = Context::new(s, &reference);
    let others: Vec<i64> = (s.r_min..=s.r_max).rev().filter(|&r| r != 1).collect();

    let nonzero: Vec<(i64, Vec<Float>)> = if k == 0 {
        others.iter().map(|&r| (r, Vec::new())).collect()
    } else if let Some(p) = gap_partition(&s.nonzero(), &reference, &others, k, threshold, &ctx) {
        p
    } else {
        ctx.search(&pool, &others)?
    };

    let mut levels = BTreeMap::new();
    let zeros = || vec![Float::new(prec); b0];
    let mut with_ref = nonzero;
    with_ref.push((1, reference.clone()));
    for (r, vals) in &with_ref {
        let mut all = zeros();
        all.extend(vals.iter().cloned());
        levels.insert(*r, all);
    }
    let (min_inter_gap, max_intra_gap) = diagnostics(&with_ref);
    Ok(ClusterAssignment {
        q: s.q,
        levels,
        min_inter_gap,
        max_intra_gap,
    })
}

/// Multiset intersection of the nonzero values of all samples.
fn shared_values(samples: &[SpectrumSample]) -> Vec<Float> {
    let mut common = samples[0].nonzero();
    for s in &samples[1..] {
        let other = s.nonzero();
        let mut kept = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < common.len() && j < other.len() {
            if approx_eq(&common[i], &other[j]) {
                kept.push(common[i].clone());
                i += 1;
                j += 1;
            } else if common[i] < other[j] {
                i += 1;
            } else {
                j += 1;
            }
        }
        common = kept;
    }
    common
}

/// Removes one approximate copy of each `wanted` value from sorted `pool`.
fn remove_matching(pool: &mut Vec<Float>, wanted: &[Float]) -> bool {
    for w in wanted {
        match pool.iter().position(|v| approx_eq(v, w)) {
            Some(i) => {
                pool.remove(i);
            }
            None => return false,
        }
    }
    true
}

fn approx_eq(a: &Float, b: &Float) -> bool {
    let scale = Float::with_val(a.prec(), a.abs_ref()).max(&Float::with_val(a.prec(), b.abs_ref()));
    let diff = Float::with_val(a.prec(), a - b).abs();
    diff <= scale >> MATCH_BITS
}

/// Gap clusters of the nonzero values, accepted only if they give exactly
/// one block of `k` values per level, the reference block is where `r = 1`
/// belongs, and every block passes the integrality checks.
fn gap_partition(
    nonzero: &[Float],
    reference: &[Float],
    others: &[i64],
    k: usize,
    threshold: f64,
    ctx: &Context,
) -> Option<Vec<(i64, Vec<Float>)>> {
    let mut clusters: Vec<Vec<Float>> = Vec::new();
    for v in nonzero {
        let split = match clusters.last().and_then(|c| c.last()) {
            Some(prev) => Float::with_val(v.prec(), v / prev).to_f64() > threshold,
            None => true,
        };
        if split {
            clusters.push(Vec::new());
        }
        clusters.last_mut().unwrap().push(v.clone());
    }
    if clusters.len() != others.len() + 1 || clusters.iter().any(|c| c.len() != k) {
        return None;
    }
    // increasing magnitude is decreasing r
    let mut order: Vec<i64> = others.to_vec();
    order.push(1);
    order.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = Vec::new();
    for (r, c) in order.into_iter().zip(clusters) {
        if r == 1 {
            if !c.iter().zip(reference).all(|(a, b)| approx_eq(a, b)) {
                return None;
            }
        } else {
            if !ctx.integral_checks(r, &c) {
                return None;
            }
            out.push((r, c));
        }
    }
    Some(out)
}

/// Exact data used to test candidate level blocks.
struct Context {
    q: u64,
    prec: u32,
    reference: Vec<Float>,
    /// `e_j` of the reference block, as integers.
    reference_e: Option<Vec<Integer>>,
}

impl Context {
    fn new(s: &SpectrumSample, reference: &[Float]) -> Self {
        let e = esym(reference, s.precision_bits);
        let reference_e = e.iter().map(nearest_integer).collect();
        Self {
            q: s.q,
            prec: s.precision_bits,
            reference: reference.to_vec(),
            reference_e,
        }
    }

    /// Checks a block for level `r <= 1`: each `e_j` is an integer divisible
    /// by `y^j` and congruent to the reference `e_j` modulo `y - 1`.
    fn integral_checks(&self, r: i64, block: &[Float]) -> bool {
        if r > 1 {
            return true;
        }
        let Some(ref_e) = &self.reference_e else {
            return false;
        };
        let y = pow_integer(&Integer::from(self.q), (1 - r) as u64);
        let ym1 = Integer::from(&y - 1);
        let mut yj = Integer::from(1);
        for (j, e) in esym(block, self.prec).iter().enumerate() {
            let Some(ei) = nearest_integer(e) else {
                return false;
            };
            if j > 0 {
                yj *= &y;
                if !ei.is_divisible(&yj) {
                    return false;
                }
            }
            if ym1 != 0 && !Integer::from(&ei - &ref_e[j]).is_divisible(&ym1) {
                return false;
            }
        }
        true
    }

    /// Backtracking over level partitions of `pool`.
    fn search(&self, pool: &[Float], others: &[i64]) -> Result<Vec<(i64, Vec<Float>)>> {
        let k = self.reference.len();
        if !others.contains(&0) {
            return Err(Error::AmbiguousClustering(
                "levels overlap and the window has no level 0 to decode from".into(),
            ));
        }
        let ambiguous = || {
            Error::AmbiguousClustering(format!(
                "no unique level assignment at q={}; retry with a larger prime",
                self.q
            ))
        };
        // with no level above r = 1, level 0 holds the smallest pooled value
        let anchored = others.iter().all(|&r| r <= 0);
        let mut budget = SEARCH_LIMIT;
        let mut level0 = Vec::new();
        let query = Query {
            k,
            floor: &self.reference,
            anchored,
            max_sum: None,
        };
        query.run(pool, &mut budget, &mut |idx| {
            let block: Vec<Float> = idx.iter().map(|&i| pool[i].clone()).collect();
            if self.integral_checks(0, &block) {
                if let Some(pred) = self.decode(&block) {
                    level0.push((idx.to_vec(), pred));
                }
            }
        });
        // remaining levels by increasing y, so each one holds the smallest
        // value still unassigned
        let mut rest: Vec<i64> = others.iter().copied().filter(|&r| r >= 2).collect();
        rest.sort_unstable_by(|a, b| b.cmp(a));
        let mut below: Vec<i64> = others.iter().copied().filter(|&r| r < 0).collect();
        below.sort_unstable_by(|a, b| b.cmp(a));
        rest.extend(below);

        let mut solutions: Vec<Vec<(i64, Vec<Float>)>> = Vec::new();
        for (idx, pred) in level0 {
            let mut used = vec![false; pool.len()];
            for &i in &idx {
                used[i] = true;
            }
            let block: Vec<Float> = idx.iter().map(|&i| pool[i].clone()).collect();
            let mut acc = vec![(0, block)];
            self.fill(
                pool,
                &mut used,
                &rest,
                &pred,
                &mut acc,
                &mut solutions,
                &mut budget,
            );
            if solutions.len() > 1 {
                return Err(ambiguous());
            }
        }
        if budget == 0 {
            return Err(Error::AmbiguousClustering(
                "level search limit reached".into(),
            ));
        }
        match solutions.len() {
            1 => Ok(solutions.pop().unwrap()),
            _ => Err(ambiguous()),
        }
    }

    /// Reads `P` off a level-0 block: the digits of `e_j(q)` in base `q` are
    /// the coefficients of `e_j(Y)`. Rejects blocks whose digit sums miss the
    /// reference values, which happens when a digit would exceed `q - 1`.
    fn decode(&self, block: &[Float]) -> Option<Vec<Vec<Integer>>> {
        let ref_e = self.reference_e.as_ref()?;
        let q = Integer::from(self.q);
        let mut out = Vec::new();
        for (j, e) in esym(block, self.prec).iter().enumerate() {
            let mut x = nearest_integer(e)?;
            let mut digits = Vec::new();
            while x != 0 {
                let (quot, rem) = x.div_rem_floor(q.clone());
                digits.push(rem);
                x = quot;
            }
            let sum: Integer = digits.iter().sum();
            if sum != ref_e[j] {
                return None;
            }
            out.push(digits);
        }
        Some(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn fill(
        &self,
        pool: &[Float],
        used: &mut [bool],
        rest: &[i64],
        pred: &[Vec<Integer>],
        acc: &mut Vec<(i64, Vec<Float>)>,
        solutions: &mut Vec<Vec<(i64, Vec<Float>)>>,
        budget: &mut usize,
    ) {
        if solutions.len() > 1 || *budget == 0 {
            return;
        }
        let Some((&r, tail)) = rest.split_first() else {
            if used.iter().all(|&u| u) {
                solutions.push(acc.clone());
            }
            return;
        };
        let want = predicted_esym(pred, self.q, r, self.prec);
        let free: Vec<usize> = (0..pool.len()).filter(|&i| !used[i]).collect();
        let sub: Vec<Float> = free.iter().map(|&i| pool[i].clone()).collect();
        let query = Query {
            k: self.reference.len(),
            floor: &[],
            anchored: true,
            max_sum: want.get(1),
        };
        let mut found = Vec::new();
        query.run(&sub, budget, &mut |idx| {
            let block: Vec<Float> = idx.iter().map(|&i| sub[i].clone()).collect();
            let e = esym(&block, self.prec);
            if e.iter().zip(&want).all(|(a, b)| approx_eq(a, b)) {
                found.push(idx.iter().map(|&i| free[i]).collect::<Vec<_>>());
            }
        });
        for idx in found {
            for &i in &idx {
                used[i] = true;
            }
            acc.push((r, idx.iter().map(|&i| pool[i].clone()).collect()));
            self.fill(pool, used, tail, pred, acc, solutions, budget);
            acc.pop();
            for &i in &idx {
                used[i] = false;
            }
        }
    }
}

/// `e_j` of the predicted polynomial at level `r`.
fn predicted_esym(pred: &[Vec<Integer>], q: u64, r: i64, prec: u32) -> Vec<Float> {
    let y = level_node(q, r);
    pred.iter()
        .map(|digits| {
            let mut acc = Rational::new();
            let mut power = Rational::from(1);
            for d in digits {
                acc += Rational::from(&power * d);
                power *= &y;
            }
            Float::with_val(prec, &acc)
        })
        .collect()
}

/// Enumeration of `k`-subsets of a sorted pool of positive values.
struct Query<'a> {
    k: usize,
    /// The `t`-th chosen value must be at least `floor[t]`.
    floor: &'a [Float],
    /// Every subset contains the first pool element.
    anchored: bool,
    /// Upper bound on the subset sum.
    max_sum: Option<&'a Float>,
}

impl Query<'_> {
    /// Calls `f` on each admissible subset (as sorted indices), skipping
    /// subsets that repeat an earlier one value for value.
    fn run(&self, pool: &[Float], budget: &mut usize, f: &mut dyn FnMut(&[usize])) {
        let prec = pool.first().map_or(64, Float::prec);
        let limit = self
            .max_sum
            .map(|m| Float::with_val(prec, m) + (Float::with_val(prec, m) >> (MATCH_BITS - 1)));
        let mut chosen = Vec::with_capacity(self.k);
        self.go(
            pool,
            0,
            Float::new(prec),
            limit.as_ref(),
            &mut chosen,
            budget,
            f,
        );
    }

    #[allow(clippy::too_many_arguments)]
    fn go(
        &self,
        pool: &[Float],
        start: usize,
        sum: Float,
        limit: Option<&Float>,
        chosen: &mut Vec<usize>,
        budget: &mut usize,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if *budget == 0 {
            return;
        }
        let t = chosen.len();
        if t == self.k {
            *budget -= 1;
            f(chosen);
            return;
        }
        let last = if self.anchored && t == 0 {
            1.min(pool.len())
        } else {
            pool.len()
        };
        for i in start..last {
            if pool.len() - i < self.k - t {
                break;
            }
            if i > start && approx_eq(&pool[i], &pool[i - 1]) {
                continue;
            }
            if let Some(lo) = self.floor.get(t) {
                if pool[i] < *lo && !approx_eq(&pool[i], lo) {
                    continue;
                }
            }
            // the remaining picks are at least pool[i] each
            let next = Float::with_val(sum.prec(), &sum + &pool[i]);
            if let Some(limit) = limit {
                let least = Float::with_val(sum.prec(), &pool[i] * (self.k - t - 1) as u32) + &next;
                if least > *limit {
                    break;
                }
            }
            chosen.push(i);
            self.go(pool, i + 1, next, limit, chosen, budget, f);
            chosen.pop();
        }
    }
}

/// `[e_0, e_1, ..., e_k]` of the values.
pub(crate) fn esym(values: &[Float], prec: u32) -> Vec<Float> {
    let mut e = vec![Float::with_val(prec, 1u32)];
    for v in values {
        e.push(Float::new(prec));
        for j in (1..e.len()).rev() {
            let t = Float::with_val(prec, &e[j - 1] * v);
            e[j] += t;
        }
    }
    e
}

/// Nearest integer, if `x` is within `2^-MATCH_BITS` of it.
fn nearest_integer(x: &Float) -> Option<Integer> {
    let i = x.to_integer()?;
    let diff = Float::with_val(x.prec(), x - &i).abs();
    (diff <= Float::with_val(x.prec(), 1u32) >> MATCH_BITS).then_some(i)
}

fn diagnostics(levels: &[(i64, Vec<Float>)]) -> (f64, f64) {
    let mut sorted: Vec<&(i64, Vec<Float>)> =
        levels.iter().filter(|(_, v)| !v.is_empty()).collect();
    sorted.sort_by(|a, b| b.0.cmp(&a.0));
    let mut intra = 1.0f64;
    for (_, vals) in &sorted {
        for w in vals.windows(2) {
            intra = intra.max(Float::with_val(53, &w[1] / &w[0]).to_f64());
        }
    }
    let mut inter = f64::INFINITY;
    for w in sorted.windows(2) {
        let lo = w[0].1.last().unwrap();
        let hi = w[1].1.first().unwrap();
        inter = inter.min(Float::with_val(53, hi / lo).to_f64());
    }
    (inter, intra)
}
