//! The hypergraph of balls of a graph: samples, realization, brute-force
//! hyperedge enumeration, and exact VC / 2VC-dimension oracles.
//!
//! These oracles are deliberately simple and exhaustive; they exist to
//! verify the compression schemes at desk scale, not to be fast.

use crate::error::{Error, Result};
use crate::ext_int::{ExtInt, Finite, PosInf};
use crate::graph::{Graph, Vertex, VertexSet};
use std::collections::HashSet;

/// A labeled sample: positive vertices that a realizing set must contain
/// and negative vertices it must avoid. The two sides are disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    x_plus: VertexSet,
    x_minus: VertexSet,
}

impl Sample {
    pub fn new(x_plus: VertexSet, x_minus: VertexSet) -> Result<Self> {
        if let Some(v) = x_plus.iter().find(|&v| x_minus.contains(v)) {
            return Err(Error::OverlappingSample(v));
        }
        Ok(Sample { x_plus, x_minus })
    }

    pub fn empty() -> Self {
        Sample {
            x_plus: VertexSet::new(),
            x_minus: VertexSet::new(),
        }
    }

    pub fn plus(&self) -> &VertexSet {
        &self.x_plus
    }

    pub fn minus(&self) -> &VertexSet {
        &self.x_minus
    }

    /// All labeled vertices, both signs.
    pub fn support(&self) -> VertexSet {
        self.x_plus.union(&self.x_minus)
    }

    pub fn is_empty(&self) -> bool {
        self.x_plus.is_empty() && self.x_minus.is_empty()
    }
}

/// `true` iff `s` contains every positive vertex and avoids every negative
/// one.
pub fn realizes(s: &VertexSet, sample: &Sample) -> bool {
    sample.plus().is_subset_of(s) && sample.minus().is_disjoint_from(s)
}

/// The hypergraph whose hyperedges are the balls of `graph` with radii in
/// `-1..=radius_cap` (every radius when the cap is `+inf`). Radius `-1`
/// contributes the empty hyperedge.
#[derive(Debug, Clone)]
pub struct BallFamily<'a> {
    graph: &'a Graph,
    radius_cap: ExtInt,
}

impl<'a> BallFamily<'a> {
    /// All balls, any radius.
    pub fn all(graph: &'a Graph) -> Self {
        BallFamily {
            graph,
            radius_cap: PosInf,
        }
    }

    /// Balls of radius at most `cap` (plus the empty ball).
    pub fn radius_at_most(graph: &'a Graph, cap: ExtInt) -> Self {
        debug_assert!(cap >= Finite(-1));
        BallFamily {
            graph,
            radius_cap: cap,
        }
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn radius_cap(&self) -> ExtInt {
        self.radius_cap
    }

    /// Largest radius worth scanning: balls are constant from `n` on.
    fn effective_cap(&self) -> i64 {
        let n = self.graph.n() as i64;
        match self.radius_cap {
            Finite(c) => c.min(n),
            PosInf => n,
            ExtInt::NegInf => -1,
        }
    }

    /// All distinct hyperedges, sorted. Includes the empty set.
    pub fn enumerate_balls(&self) -> Vec<VertexSet> {
        let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
        let mut out = Vec::new();
        let mut push = |s: VertexSet| {
            if seen.insert(s.as_slice().to_vec()) {
                out.push(s);
            }
        };
        push(VertexSet::new());
        let cap = self.effective_cap();
        for c in 0..self.graph.n() {
            for r in 0..=cap {
                push(self.graph.ball(c, Finite(r)));
            }
        }
        out.sort();
        out
    }

    /// Whether some hyperedge realizes the sample.
    ///
    /// Equivalent to scanning `enumerate_balls`, but per center the
    /// realizing radii form an interval, so only its endpoints are needed.
    pub fn is_sample(&self, sample: &Sample) -> bool {
        self.find_witness(sample).is_some()
    }

    /// The first realizing ball in scan order: ascending center, then
    /// ascending radius in `-1..=cap`.
    pub fn find_witness(&self, sample: &Sample) -> Option<(Vertex, ExtInt)> {
        let cap = self.effective_cap();
        for c in 0..self.graph.n() {
            if let Some(r) = self.least_realizing_radius(sample, c, cap) {
                return Some((c, r));
            }
        }
        None
    }

    /// The realizing ball maximizing the radius within `-1..=cap`, ties
    /// broken by the least center.
    pub fn find_witness_max_radius(&self, sample: &Sample) -> Option<(Vertex, ExtInt)> {
        let cap = self.effective_cap();
        let mut best: Option<(Vertex, i64)> = None;
        for c in 0..self.graph.n() {
            if let Some((_, hi)) = self.realizing_interval(sample, c, cap) {
                if best.map_or(true, |(_, r)| hi > r) {
                    best = Some((c, hi));
                }
            }
        }
        best.map(|(c, r)| (c, Finite(r)))
    }

    fn least_realizing_radius(&self, sample: &Sample, c: Vertex, cap: i64) -> Option<ExtInt> {
        self.realizing_interval(sample, c, cap)
            .map(|(lo, _)| Finite(lo))
    }

    /// The interval of radii `r` in `-1..=cap` for which `B(c, r)` realizes
    /// the sample, if non-empty.
    fn realizing_interval(&self, sample: &Sample, c: Vertex, cap: i64) -> Option<(i64, i64)> {
        let dist = self
            .graph
            .bfs_distances(&VertexSet::from_unsorted(vec![c]));
        let mut lo = Finite(-1);
        for v in sample.plus().iter() {
            lo = lo.max(dist[v]);
        }
        let mut hi = PosInf;
        for v in sample.minus().iter() {
            hi = hi.min(dist[v]);
        }
        let lo = lo.finite()?; // +inf: some positive vertex is unreachable
        let hi = match hi - Finite(1) {
            Finite(h) => h.min(cap),
            _ => cap,
        };
        (lo <= hi).then_some((lo, hi))
    }

    /// Exact VC-dimension of the family, by subset enumeration smallest
    /// first. Requires `n <= 64`.
    pub fn vc_dimension(&self) -> usize {
        self.vc_dimension_within(&self.graph.all_vertices())
    }

    /// VC-dimension restricted to shattered sets drawn from `candidates`.
    pub fn vc_dimension_within(&self, candidates: &VertexSet) -> usize {
        self.vc_dimension_impl(candidates, usize::MAX)
    }

    /// Ascending scan that stops early once `max_d` is certified; useful
    /// when an upper bound on the dimension is known in advance.
    pub fn vc_dimension_capped(&self, max_d: usize) -> usize {
        self.vc_dimension_impl(&self.graph.all_vertices(), max_d)
    }

    fn vc_dimension_impl(&self, candidates: &VertexSet, max_d: usize) -> usize {
        assert!(
            self.graph.n() <= 64,
            "exact VC computation needs n <= 64 (got {})",
            self.graph.n()
        );
        let balls = self.ball_masks();
        let cands: Vec<Vertex> = candidates.iter().collect();
        let mut best = 0;
        while best < cands.len() && best < max_d {
            let d = best + 1;
            if !Self::exists_shattered(&balls, &cands, d) {
                break;
            }
            best = d;
        }
        best
    }

    fn ball_masks(&self) -> Vec<u64> {
        let mut masks: Vec<u64> = self
            .enumerate_balls()
            .iter()
            .map(|b| b.iter().fold(0u64, |m, v| m | (1 << v)))
            .collect();
        masks.sort_unstable();
        masks.dedup();
        masks
    }

    fn exists_shattered(balls: &[u64], cands: &[Vertex], d: usize) -> bool {
        let mut combo: Vec<usize> = (0..d).collect();
        loop {
            if Self::is_shattered(balls, cands, &combo) {
                return true;
            }
            if !next_combination(&mut combo, cands.len()) {
                return false;
            }
        }
    }

    fn is_shattered(balls: &[u64], cands: &[Vertex], combo: &[usize]) -> bool {
        let d = combo.len();
        let verts: Vec<Vertex> = combo.iter().map(|&i| cands[i]).collect();
        let mask = verts.iter().fold(0u64, |m, &v| m | (1 << v));
        let mut hit = vec![false; 1 << d];
        let mut remaining = 1usize << d;
        for &b in balls {
            let trace = b & mask;
            let mut idx = 0;
            for (bit, &v) in verts.iter().enumerate() {
                if trace & (1 << v) != 0 {
                    idx |= 1 << bit;
                }
            }
            if !hit[idx] {
                hit[idx] = true;
                remaining -= 1;
                if remaining == 0 {
                    return true;
                }
            }
        }
        false
    }

    /// Exact 2VC-dimension: the largest `S` such that every pair of `S` is
    /// cut out exactly by some hyperedge. Singletons qualify vacuously.
    pub fn two_vc_dimension(&self) -> usize {
        assert!(
            self.graph.n() <= 64,
            "exact 2VC computation needs n <= 64 (got {})",
            self.graph.n()
        );
        let balls = self.ball_masks();
        let n = self.graph.n();
        let mut best = 0;
        let mut stack: Vec<(u64, usize, usize)> = (0..n).map(|v| (1u64 << v, v, 1)).collect();
        while let Some((mask, last, size)) = stack.pop() {
            best = best.max(size);
            for w in last + 1..n {
                let bigger = mask | (1 << w);
                if Self::is_two_shattered(&balls, bigger) {
                    stack.push((bigger, w, size + 1));
                }
            }
        }
        best
    }

    fn is_two_shattered(balls: &[u64], mask: u64) -> bool {
        let verts: Vec<u32> = (0..64).filter(|&i| mask & (1 << i) != 0).collect();
        for (i, &a) in verts.iter().enumerate() {
            for &b in &verts[i + 1..] {
                let pair = (1u64 << a) | (1u64 << b);
                if !balls.iter().any(|&e| e & mask == pair) {
                    return false;
                }
            }
        }
        true
    }
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let d = combo.len();
    let mut i = d;
    while i > 0 {
        i -= 1;
        if combo[i] < n - (d - i) {
            combo[i] += 1;
            for j in i + 1..d {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
