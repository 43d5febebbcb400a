//! Schemes for balls of bounded radius: the local-treewidth wrapper, which
//! compresses inside the `2r`-ball around a positive vertex, and the
//! closed-neighborhood scheme for graphs of bounded degeneracy.

use crate::balls::{realizes, BallFamily, Sample};
use crate::codes::{index_width, ArrayCode, Bits, LabeledCode};
use crate::error::{Error, Result};
use crate::ext_int::{ExtInt, Finite};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::treewidth::{min_fill_decomposition, TreeDecomposition, TreewidthScheme};

/// Per-vertex data of the local-treewidth wrapper: the subgraph induced by
/// the `2r`-ball, its id maps, and a decomposition of it.
struct LocalPart {
    graph: Graph,
    new_to_old: Vec<Vertex>,
    old_to_new: Vec<usize>,
    decomposition: TreeDecomposition,
}

/// Compression for balls of radius at most `r` in graphs whose `2r`-balls
/// induce low-treewidth subgraphs: one entry naming a positive vertex,
/// then a treewidth code inside its `2r`-ball. Codes have length
/// `4*w + 8` where `w` is the largest width used by any per-vertex
/// decomposition.
pub struct LocalTreewidthScheme<'a> {
    graph: &'a Graph,
    radius: i64,
    max_width: usize,
    locals: Vec<LocalPart>,
}

impl<'a> LocalTreewidthScheme<'a> {
    pub const IS_PROPER: bool = true;

    /// Builds the per-vertex table. When a decomposition of the whole
    /// graph is supplied its restrictions certify the local widths;
    /// otherwise each ball subgraph gets a min-fill decomposition, whose
    /// achieved width is reported but never assumed.
    pub fn new(graph: &'a Graph, radius: i64, global: Option<&TreeDecomposition>) -> Result<Self> {
        if radius < 1 {
            return Err(Error::InvalidInput("the radius bound must be positive".into()));
        }
        if graph.n() == 0 {
            return Err(Error::InvalidInput("empty graph".into()));
        }
        let mut locals = Vec::with_capacity(graph.n());
        let mut max_width = 0;
        for v in 0..graph.n() {
            let ball = graph.ball(v, Finite(2 * radius));
            let (sub, new_to_old) = graph.induced_subgraph(&ball);
            let mut old_to_new = vec![usize::MAX; graph.n()];
            for (new, &old) in new_to_old.iter().enumerate() {
                old_to_new[old] = new;
            }
            let decomposition = match global {
                Some(g) => {
                    let raw = g.restricted(&ball, &old_to_new);
                    TreeDecomposition::make_binary(&sub, &raw)?
                }
                None => min_fill_decomposition(&sub)?,
            };
            max_width = max_width.max(decomposition.width());
            locals.push(LocalPart {
                graph: sub,
                new_to_old,
                old_to_new,
                decomposition,
            });
        }
        Ok(LocalTreewidthScheme {
            graph,
            radius,
            max_width,
            locals,
        })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    /// Largest decomposition width across the per-vertex table.
    pub fn max_width(&self) -> usize {
        self.max_width
    }

    pub fn code_len(&self) -> usize {
        4 * self.max_width + 8
    }

    fn inner_scheme(&self, x: Vertex) -> TreewidthScheme<'_> {
        let part = &self.locals[x];
        TreewidthScheme::new(&part.graph, &part.decomposition, self.max_width)
            .expect("per-vertex widths are below the maximum")
            .with_radius_cap(Finite(self.radius))
    }

    pub fn compress(&self, sample: &Sample) -> Result<ArrayCode> {
        let family = BallFamily::radius_at_most(self.graph, Finite(self.radius));
        if !family.is_sample(sample) {
            return Err(Error::UnrealizableSample);
        }
        let Some(x) = sample.plus().first() else {
            return Ok(ArrayCode::blank(self.code_len()));
        };
        let part = &self.locals[x];
        // A realizing ball of radius <= r containing x lies inside the
        // 2r-ball of x, so clipping the positives loses nothing.
        debug_assert!(sample
            .plus()
            .iter()
            .all(|v| part.old_to_new[v] != usize::MAX));
        let clip = |side: &VertexSet| -> VertexSet {
            side.iter()
                .filter(|&v| part.old_to_new[v] != usize::MAX)
                .map(|v| part.old_to_new[v])
                .collect()
        };
        let clipped = Sample::new(clip(sample.plus()), clip(sample.minus()))?;
        let inner = self.inner_scheme(x).compress(&clipped)?;
        let mut entries = Vec::with_capacity(self.code_len());
        entries.push(Some(x));
        entries.extend(
            inner
                .entries()
                .iter()
                .map(|e| e.map(|v| part.new_to_old[v])),
        );
        Ok(ArrayCode::new(entries))
    }

    pub fn reconstruct(&self, code: &ArrayCode) -> VertexSet {
        self.reconstruct_detailed(code).0
    }

    pub fn reconstruct_detailed(&self, code: &ArrayCode) -> (VertexSet, Option<(Vertex, ExtInt)>) {
        assert_eq!(code.len(), self.code_len(), "code length mismatch");
        let Some(x) = code.get(0) else {
            return (VertexSet::new(), None);
        };
        if x >= self.graph.n() {
            return (VertexSet::new(), None);
        }
        let part = &self.locals[x];
        let mut inner_entries = Vec::with_capacity(code.len() - 1);
        for e in &code.entries()[1..] {
            match e {
                None => inner_entries.push(None),
                Some(v) if *v < self.graph.n() && part.old_to_new[*v] != usize::MAX => {
                    inner_entries.push(Some(part.old_to_new[*v]));
                }
                Some(_) => return (VertexSet::new(), None),
            }
        }
        let (local_ball, witness) = self
            .inner_scheme(x)
            .reconstruct_detailed(&ArrayCode::new(inner_entries), true);
        let ball: VertexSet = local_ball.iter().map(|v| part.new_to_old[v]).collect();
        (ball, witness.map(|(c, s)| (part.new_to_old[c], s)))
    }
}

/// A vertex order with every vertex preceded by at most `t` of its
/// neighbors, found by peeling minimum-degree vertices (ties by least id)
/// and reversing. Returns the order and the achieved bound `t`, which is
/// the degeneracy.
pub fn degeneracy_order(graph: &Graph) -> (Vec<Vertex>, usize) {
    let n = graph.n();
    let mut degree: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut removal = Vec::with_capacity(n);
    let mut t = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("vertices remain");
        t = t.max(degree[v]);
        alive[v] = false;
        removal.push(v);
        for &w in graph.neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
            }
        }
    }
    removal.reverse();
    (removal, t)
}

/// The closed-neighborhood scheme for graphs of degeneracy at most `t`:
/// either one positive vertex plus the rank of the center among its
/// earlier closed neighbors, or the raw positive side (of size at most
/// `t`). Total size `t + ceil(log2(t+1)) + 1`.
///
/// Not proper: the raw-set branch can return a set that is no ball.
pub struct DegeneracyScheme<'a> {
    graph: &'a Graph,
    position: Vec<usize>,
    t: usize,
}

impl<'a> DegeneracyScheme<'a> {
    pub const IS_PROPER: bool = false;

    pub fn new(graph: &'a Graph, order: Vec<Vertex>, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidInput("the back-degree bound must be positive".into()));
        }
        if order.len() != graph.n() {
            return Err(Error::InvalidInput("order must list every vertex once".into()));
        }
        let mut position = vec![usize::MAX; graph.n()];
        for (i, &v) in order.iter().enumerate() {
            if v >= graph.n() || position[v] != usize::MAX {
                return Err(Error::InvalidInput("order must list every vertex once".into()));
            }
            position[v] = i;
        }
        for v in 0..graph.n() {
            let back = graph
                .neighbors(v)
                .iter()
                .filter(|&&u| position[u] < position[v])
                .count();
            if back > t {
                return Err(Error::InvalidInput(format!(
                    "vertex {v} has {back} earlier neighbors, above the bound {t}"
                )));
            }
        }
        Ok(DegeneracyScheme { graph, position, t })
    }

    /// Scheme from the peeling order, with the bound clamped to at least 1
    /// so the bit budget is well-defined on edgeless graphs.
    pub fn from_graph(graph: &'a Graph) -> Result<Self> {
        let (order, t) = degeneracy_order(graph);
        Self::new(graph, order, t.max(1))
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn back_degree_bound(&self) -> usize {
        self.t
    }

    pub fn bits_len(&self) -> usize {
        1 + index_width(self.t)
    }

    /// The closed neighbors of `x` not after it, in order position order.
    fn earlier_closed_neighbors(&self, x: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self
            .graph
            .neighbors(x)
            .iter()
            .copied()
            .chain(std::iter::once(x))
            .filter(|&u| self.position[u] <= self.position[x])
            .collect();
        out.sort_unstable_by_key(|&u| self.position[u]);
        out
    }

    pub fn compress(&self, sample: &Sample) -> Result<LabeledCode> {
        let center = (0..self.graph.n())
            .find(|&c| realizes(&self.graph.ball(c, Finite(1)), sample))
            .ok_or(Error::UnrealizableSample)?;
        let late = sample
            .plus()
            .iter()
            .filter(|&x| self.position[center] <= self.position[x])
            .min_by_key(|&x| self.position[x]);
        let width = index_width(self.t);
        match late {
            Some(x) => {
                let rank = self
                    .earlier_closed_neighbors(x)
                    .iter()
                    .position(|&u| u == center)
                    .expect("the center is an earlier closed neighbor of x");
                debug_assert!(rank < self.t + 1);
                let mut bits = Bits::new(vec![true]);
                bits.push_uint(rank, width);
                Ok(LabeledCode {
                    y_plus: VertexSet::from_unsorted(vec![x]),
                    y_minus: VertexSet::new(),
                    bits,
                })
            }
            None => {
                debug_assert!(sample.plus().len() <= self.t);
                Ok(LabeledCode {
                    y_plus: sample.plus().clone(),
                    y_minus: VertexSet::new(),
                    bits: Bits::zeros(1 + width),
                })
            }
        }
    }

    /// Either the closed neighborhood addressed by the rank, or the raw
    /// kept set. Malformed codes give the empty set.
    pub fn reconstruct(&self, code: &LabeledCode) -> VertexSet {
        if code.bits.len() != self.bits_len()
            || code.y_plus.iter().any(|v| v >= self.graph.n())
        {
            return VertexSet::new();
        }
        if !code.bits.get(0) {
            return code.y_plus.clone();
        }
        let Some(x) = code.y_plus.first() else {
            return VertexSet::new();
        };
        if code.y_plus.len() != 1 {
            return VertexSet::new();
        }
        let Ok(rank) = code.bits.read_uint(1, index_width(self.t)) else {
            return VertexSet::new();
        };
        match self.earlier_closed_neighbors(x).get(rank) {
            Some(&c) => self.graph.ball(c, Finite(1)),
            None => VertexSet::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_grid, gen_partial_ktree, gen_sample, gen_sample_at, gen_shattering_gadget, SplitMix64};

    fn set(items: &[Vertex]) -> VertexSet {
        VertexSet::from_unsorted(items.to_vec())
    }

    fn sample(plus: &[Vertex], minus: &[Vertex]) -> Sample {
        Sample::new(set(plus), set(minus)).unwrap()
    }

    #[test]
    fn degeneracy_of_trees_is_one() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        assert_eq!(degeneracy_order(&g).1, 1);
    }

    #[test]
    fn degeneracy_of_k4_is_three() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(degeneracy_order(&g).1, 3);
    }

    #[test]
    fn degeneracy_of_the_order_four_gadget_is_three() {
        let g = gen_shattering_gadget(4).unwrap();
        assert_eq!(degeneracy_order(&g).1, 3);
    }

    #[test]
    fn peeling_matches_exhaustive_minimum_on_small_graphs() {
        let mut rng = SplitMix64::new(17);
        for _ in 0..25 {
            let n = 3 + rng.next_below(5) as usize;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.next_below(3) == 0 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let (_, t) = degeneracy_order(&g);

            // Minimum over all orders of the maximum back-degree.
            let mut perm: Vec<Vertex> = (0..n).collect();
            let mut best = usize::MAX;
            permute(&mut perm, 0, &mut |order| {
                let mut pos = vec![0; n];
                for (i, &v) in order.iter().enumerate() {
                    pos[v] = i;
                }
                let worst = (0..n)
                    .map(|v| {
                        g.neighbors(v)
                            .iter()
                            .filter(|&&u| pos[u] < pos[v])
                            .count()
                    })
                    .max()
                    .unwrap();
                best = best.min(worst);
            });
            assert_eq!(t, best);
        }
    }

    fn permute(items: &mut Vec<Vertex>, k: usize, visit: &mut impl FnMut(&[Vertex])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, visit);
            items.swap(k, i);
        }
    }

    #[test]
    fn scheme_rejects_orders_that_break_the_bound() {
        let g = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(DegeneracyScheme::new(&g, vec![0, 1, 2], 1).is_err());
        assert!(DegeneracyScheme::new(&g, vec![0, 1, 2], 2).is_ok());
        assert!(DegeneracyScheme::new(&g, vec![0, 0, 2], 2).is_err());
    }

    #[test]
    fn star_neighborhood_sample_round_trips() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let scheme = DegeneracyScheme::from_graph(&g).unwrap();
        let s = sample(&[0, 1], &[]);
        let code = scheme.compress(&s).unwrap();
        assert_eq!(code.bits.len(), scheme.bits_len());
        let ball = scheme.reconstruct(&code);
        assert!(realizes(&ball, &s));
        assert!(ball == set(&[0, 1, 2, 3]) || ball == set(&[0, 1]));
    }

    #[test]
    fn negative_only_sample_takes_the_raw_branch() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let scheme = DegeneracyScheme::from_graph(&g).unwrap();
        let s = sample(&[], &[2, 3]);
        let code = scheme.compress(&s).unwrap();
        assert!(!code.bits.get(0));
        assert!(code.y_plus.is_empty());
        assert!(scheme.reconstruct(&code).is_empty());
    }

    #[test]
    fn raw_branch_output_is_the_kept_set() {
        let code = LabeledCode {
            y_plus: set(&[1, 2]),
            y_minus: set(&[]),
            bits: Bits::parse("00").unwrap(),
        };
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let scheme = DegeneracyScheme::from_graph(&g).unwrap();
        assert_eq!(scheme.bits_len(), 2);
        // Not a ball of the star; the scheme is not proper on this branch.
        assert_eq!(scheme.reconstruct(&code), set(&[1, 2]));
    }

    #[test]
    fn seeded_neighborhood_round_trips() {
        let mut rng = SplitMix64::new(3);
        for trial in 0..300u64 {
            let n = 5 + rng.next_below(12) as usize;
            let (g, _) = gen_partial_ktree(n, 3, 800, trial).unwrap();
            let scheme = DegeneracyScheme::from_graph(&g).unwrap();
            let center = rng.next_below(n as u64) as Vertex;
            let s = gen_sample_at(&g, center, Finite(1), trial ^ 0xd06);
            let code = scheme.compress(&s).unwrap();
            let recovered = scheme.reconstruct(&code);
            assert!(realizes(&recovered, &s), "trial {trial}");
            let t = scheme.back_degree_bound();
            assert!(code.subsample_size() + code.bits.len() <= t + index_width(t) + 1);
        }
    }

    #[test]
    fn local_scheme_blank_on_empty_positive_side() {
        let g = gen_grid(3, 3);
        let scheme = LocalTreewidthScheme::new(&g, 1, None).unwrap();
        let s = sample(&[], &[4]);
        let code = scheme.compress(&s).unwrap();
        assert_eq!(code.len(), scheme.code_len());
        assert!(code.is_all_blank());
        assert!(scheme.reconstruct(&code).is_empty());
    }

    #[test]
    fn grid_corner_sample_round_trips_within_radius() {
        let g = gen_grid(5, 5);
        let scheme = LocalTreewidthScheme::new(&g, 1, None).unwrap();
        let s = sample(&[0], &[24]);
        let code = scheme.compress(&s).unwrap();
        assert_eq!(code.len(), 4 * scheme.max_width() + 8);
        let ball = scheme.reconstruct(&code);
        assert!(realizes(&ball, &s));
        let fam = BallFamily::radius_at_most(&g, Finite(1));
        assert!(fam.enumerate_balls().contains(&ball));
    }

    #[test]
    fn local_scheme_rejects_wide_samples() {
        // No radius-1 ball contains two opposite grid corners.
        let g = gen_grid(4, 4);
        let scheme = LocalTreewidthScheme::new(&g, 1, None).unwrap();
        assert!(matches!(
            scheme.compress(&sample(&[0, 15], &[])),
            Err(Error::UnrealizableSample)
        ));
    }

    #[test]
    fn seeded_local_round_trips_stay_in_the_capped_family() {
        for seed in 0..40u64 {
            let g = gen_grid(4, 4);
            let r = 1 + (seed % 2) as i64;
            let scheme = LocalTreewidthScheme::new(&g, r, None).unwrap();
            let fam = BallFamily::radius_at_most(&g, Finite(r));
            let (s, _) = gen_sample(&fam, seed ^ 0x10ca1);
            let code = scheme.compress(&s).unwrap();
            let ball = scheme.reconstruct(&code);
            assert!(realizes(&ball, &s), "seed {seed}");
            assert!(fam.enumerate_balls().contains(&ball));
        }
    }
}
