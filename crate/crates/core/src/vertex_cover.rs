//! Vertex covers and the labeled compression scheme for graphs covered by
//! at most `t` vertices: a subsample of at most two vertices plus `t + 2`
//! bits. Radius-1 balls around false twins are the delicate part; they are
//! handled with a cyclic-order trick on the twin class.

use crate::balls::{BallFamily, Sample};
use crate::codes::{Bits, LabeledCode};
use crate::error::{Error, Result};
use crate::ext_int::{ExtInt, Finite, PosInf};
use crate::graph::{Graph, Vertex, VertexSet};

/// A vertex cover of size at most `t` found by the classic bounded search
/// tree (branch on either endpoint of the least uncovered edge), or `None`
/// when no such cover exists. Deterministic: the include-first branch wins.
pub fn find_vertex_cover(graph: &Graph, t: usize) -> Option<VertexSet> {
    let mut chosen = vec![false; graph.n()];
    branch(graph, &mut chosen, t).then(|| {
        (0..graph.n()).filter(|&v| chosen[v]).collect()
    })
}

fn branch(graph: &Graph, chosen: &mut [bool], budget: usize) -> bool {
    let uncovered = (0..graph.n())
        .filter(|&u| !chosen[u])
        .find_map(|u| {
            graph
                .neighbors(u)
                .iter()
                .find(|&&v| u < v && !chosen[v])
                .map(|&v| (u, v))
        });
    let Some((u, v)) = uncovered else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for pick in [u, v] {
        chosen[pick] = true;
        if branch(graph, chosen, budget - 1) {
            return true;
        }
        chosen[pick] = false;
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Case {
    /// No positive vertices.
    EmptyPlus = 0,
    /// The fixed center is itself positive.
    CenterPositive = 1,
    /// The fixed center is a cover vertex.
    CenterInCover = 2,
    /// The fixed center is an uncovered vertex outside the sample.
    CenterOutside = 3,
}

impl Case {
    fn from_bits(hi: bool, lo: bool) -> Case {
        match (hi, lo) {
            (false, false) => Case::EmptyPlus,
            (false, true) => Case::CenterPositive,
            (true, false) => Case::CenterInCover,
            (true, true) => Case::CenterOutside,
        }
    }
}

/// The vertex-cover scheme. The cover is indexed in ascending vertex
/// order; the trailing `t` bits address it positionally.
#[derive(Debug, Clone)]
pub struct VertexCoverScheme<'a> {
    graph: &'a Graph,
    cover: VertexSet,
    t: usize,
}

impl<'a> VertexCoverScheme<'a> {
    pub const IS_PROPER: bool = true;

    pub fn new(graph: &'a Graph, cover: VertexSet, t: usize) -> Result<Self> {
        if cover.len() > t {
            return Err(Error::InvalidInput(format!(
                "cover has {} vertices, above the claimed bound {t}",
                cover.len()
            )));
        }
        if let Some(v) = cover.iter().find(|&v| v >= graph.n()) {
            return Err(Error::VertexOutOfRange(v, graph.n()));
        }
        if let Some((u, v)) = graph
            .edges()
            .into_iter()
            .find(|&(u, v)| !cover.contains(u) && !cover.contains(v))
        {
            return Err(Error::InvalidInput(format!(
                "edge ({u}, {v}) is not covered"
            )));
        }
        Ok(VertexCoverScheme { graph, cover, t })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn cover(&self) -> &VertexSet {
        &self.cover
    }

    pub fn bits_len(&self) -> usize {
        self.t + 2
    }

    /// The ball the compressor fixes: maximum radius in `-1..=n`, ties by
    /// least center. Exposed so tests can drive specific branches.
    pub fn fixed_ball(&self, sample: &Sample) -> Option<(Vertex, ExtInt)> {
        BallFamily::all(self.graph).find_witness_max_radius(sample)
    }

    /// Vertices outside the cover whose whole neighborhood is exactly
    /// `neighborhood`.
    pub fn false_twins(&self, neighborhood: &VertexSet) -> VertexSet {
        (0..self.graph.n())
            .filter(|&y| {
                !self.cover.contains(y) && self.graph.neighbors(y) == neighborhood.as_slice()
            })
            .collect()
    }

    pub fn compress(&self, sample: &Sample) -> Result<LabeledCode> {
        let (center, radius) = self.fixed_ball(sample).ok_or(Error::UnrealizableSample)?;
        let case = if sample.plus().is_empty() {
            Case::EmptyPlus
        } else if sample.plus().contains(center) {
            Case::CenterPositive
        } else if self.cover.contains(center) {
            Case::CenterInCover
        } else {
            Case::CenterOutside
        };

        let special = (!sample.minus().is_empty()).then(|| {
            let neighborhood: VertexSet = self.graph.neighbors(center).iter().copied().collect();
            let twins_in_minus: VertexSet = self
                .false_twins(&neighborhood)
                .iter()
                .filter(|&y| sample.minus().contains(y))
                .collect();
            if radius == Finite(1) && !self.cover.contains(center) && !twins_in_minus.is_empty() {
                cyclic_predecessor(&twins_in_minus.union(&VertexSet::from_unsorted(vec![center])), center)
            } else {
                let dist = self
                    .graph
                    .bfs_distances(&VertexSet::from_unsorted(vec![center]));
                sample
                    .minus()
                    .iter()
                    .min_by_key(|&x| dist[x])
                    .expect("minus side is non-empty")
            }
        });

        let (y_plus, y_minus) = match case {
            Case::EmptyPlus => (VertexSet::new(), VertexSet::new()),
            Case::CenterPositive => (
                VertexSet::from_unsorted(vec![center]),
                special.map(|x| VertexSet::from_unsorted(vec![x])).unwrap_or_default(),
            ),
            Case::CenterInCover | Case::CenterOutside => {
                let z = sample.plus().first().expect("plus side is non-empty");
                (
                    VertexSet::from_unsorted(vec![z]),
                    special.map(|x| VertexSet::from_unsorted(vec![x])).unwrap_or_default(),
                )
            }
        };

        let tag = case as usize;
        let mut bits = Bits::new(vec![tag & 2 != 0, tag & 1 != 0]);
        match case {
            Case::CenterInCover => {
                let j = self
                    .cover
                    .as_slice()
                    .binary_search(&center)
                    .expect("center is in the cover");
                for i in 0..self.t {
                    bits.push(i == j);
                }
            }
            Case::CenterOutside => {
                for i in 0..self.t {
                    let covered = self
                        .cover
                        .as_slice()
                        .get(i)
                        .is_some_and(|&r| self.graph.has_edge(center, r));
                    bits.push(covered);
                }
            }
            _ => {
                for _ in 0..self.t {
                    bits.push(false);
                }
            }
        }
        Ok(LabeledCode {
            y_plus,
            y_minus,
            bits,
        })
    }

    pub fn reconstruct(&self, code: &LabeledCode) -> VertexSet {
        self.reconstruct_detailed(code).0
    }

    /// Malformed codes give the empty set; everything else is a ball,
    /// reported with its parameters.
    pub fn reconstruct_detailed(&self, code: &LabeledCode) -> (VertexSet, Option<(Vertex, ExtInt)>) {
        let empty = (VertexSet::new(), None);
        if code.bits.len() != self.bits_len() {
            return empty;
        }
        if code
            .y_plus
            .iter()
            .chain(code.y_minus.iter())
            .any(|v| v >= self.graph.n())
        {
            return empty;
        }
        let case = Case::from_bits(code.bits.get(0), code.bits.get(1));
        if case == Case::EmptyPlus {
            return (VertexSet::new(), None);
        }
        let Some(center) = code.y_plus.first() else {
            return empty;
        };
        let Some(x) = code.y_minus.first() else {
            // No negative vertex was kept: the whole component works.
            return (self.graph.ball(center, PosInf), Some((center, Finite(self.graph.n() as i64))));
        };
        let tail: Vec<bool> = (2..code.bits.len()).map(|i| code.bits.get(i)).collect();
        match case {
            Case::EmptyPlus => unreachable!(),
            Case::CenterPositive => {
                let radius = self.graph.dist(center, x) - Finite(1);
                (self.graph.ball(center, radius), Some((center, radius)))
            }
            Case::CenterInCover => {
                let ones: Vec<usize> = (0..self.t).filter(|&i| tail[i]).collect();
                let [j] = ones.as_slice() else {
                    return empty;
                };
                let Some(&c) = self.cover.as_slice().get(*j) else {
                    return empty;
                };
                let radius = self.graph.dist(c, x) - Finite(1);
                (self.graph.ball(c, radius), Some((c, radius)))
            }
            Case::CenterOutside => {
                let marked: VertexSet = (0..self.t)
                    .filter(|&i| tail[i])
                    .filter_map(|i| self.cover.as_slice().get(i).copied())
                    .collect();
                let twins = self.false_twins(&marked);
                if twins.is_empty() {
                    return empty;
                }
                if twins.contains(x) {
                    let y = cyclic_successor(&twins, x);
                    (self.graph.ball(y, Finite(1)), Some((y, Finite(1))))
                } else {
                    let y = twins.first().expect("checked non-empty");
                    let radius = self.graph.dist(y, x) - Finite(1);
                    (self.graph.ball(y, radius), Some((y, radius)))
                }
            }
        }
    }
}

/// Predecessor of `v` in the ascending cyclic order of `set` (which must
/// contain `v`); a singleton wraps to itself.
fn cyclic_predecessor(set: &VertexSet, v: Vertex) -> Vertex {
    let items = set.as_slice();
    let pos = items.binary_search(&v).expect("member of the cycle");
    items[(pos + items.len() - 1) % items.len()]
}

fn cyclic_successor(set: &VertexSet, v: Vertex) -> Vertex {
    let items = set.as_slice();
    let pos = items.binary_search(&v).expect("member of the cycle");
    items[(pos + 1) % items.len()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balls::realizes;
    use crate::generate::{gen_sample, gen_vc_graph, SplitMix64};

    fn set(items: &[Vertex]) -> VertexSet {
        VertexSet::from_unsorted(items.to_vec())
    }

    fn sample(plus: &[Vertex], minus: &[Vertex]) -> Sample {
        Sample::new(set(plus), set(minus)).unwrap()
    }

    #[test]
    fn cover_of_edgeless_graph_is_empty() {
        let g = Graph::empty(4);
        assert_eq!(find_vertex_cover(&g, 0), Some(set(&[])));
    }

    #[test]
    fn cover_of_a_star_is_its_center() {
        let g = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(find_vertex_cover(&g, 1), Some(set(&[0])));
    }

    #[test]
    fn five_cycle_needs_three() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(find_vertex_cover(&g, 2), None);
        // Exhaustive oracle: no 2-subset covers all edges.
        for a in 0..5 {
            for b in a + 1..5 {
                let covered = g
                    .edges()
                    .into_iter()
                    .all(|(u, v)| u == a || u == b || v == a || v == b);
                assert!(!covered);
            }
        }
        let three = find_vertex_cover(&g, 3).unwrap();
        assert!(three.len() <= 3);
        for (u, v) in g.edges() {
            assert!(three.contains(u) || three.contains(v));
        }
    }

    #[test]
    fn empty_plus_side_is_case_zero() {
        let (g, cover) = gen_vc_graph(6, 2, 1).unwrap();
        let scheme = VertexCoverScheme::new(&g, cover, 2).unwrap();
        let s = sample(&[], &[3, 4]);
        let code = scheme.compress(&s).unwrap();
        assert!(code.y_plus.is_empty() && code.y_minus.is_empty());
        assert_eq!(code.bits.len(), 4);
        assert_eq!(code.bits.to_string()[..2].to_string(), "00");
        assert!(scheme.reconstruct(&code).is_empty());
    }

    #[test]
    fn k2_positive_pair_keeps_the_center() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let scheme = VertexCoverScheme::new(&g, set(&[0]), 1).unwrap();
        let s = sample(&[0, 1], &[]);
        assert_eq!(scheme.fixed_ball(&s), Some((0, Finite(2))));
        let code = scheme.compress(&s).unwrap();
        assert_eq!(code.y_plus, set(&[0]));
        assert!(code.y_minus.is_empty());
        assert_eq!(code.bits.to_string(), "010");
        let ball = scheme.reconstruct(&code);
        assert!(realizes(&ball, &s));
        assert_eq!(ball, set(&[0, 1]));
    }

    #[test]
    fn star_leaf_against_its_center() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let scheme = VertexCoverScheme::new(&g, set(&[0]), 1).unwrap();
        let s = sample(&[1], &[0]);
        // The only realizing ball is the leaf alone.
        assert_eq!(scheme.fixed_ball(&s), Some((1, Finite(0))));
        let code = scheme.compress(&s).unwrap();
        assert_eq!(code.y_plus, set(&[1]));
        assert_eq!(code.y_minus, set(&[0]));
        assert_eq!(code.bits.to_string(), "010");
        let ball = scheme.reconstruct(&code);
        assert!(realizes(&ball, &s));
        assert_eq!(ball, set(&[1]));
    }

    #[test]
    fn twin_cycle_branch_returns_a_clean_twin() {
        // Cover {0}; vertices 1, 2, 3 are false twins with neighborhood {0}.
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let scheme = VertexCoverScheme::new(&g, set(&[0]), 1).unwrap();
        let s = sample(&[0], &[2, 3]);
        assert_eq!(scheme.fixed_ball(&s), Some((1, Finite(1))));
        let code = scheme.compress(&s).unwrap();
        // Case 4 with the cyclic predecessor of 1 in {1, 2, 3}.
        assert_eq!(code.y_plus, set(&[0]));
        assert_eq!(code.y_minus, set(&[3]));
        assert_eq!(code.bits.to_string(), "111");
        let ball = scheme.reconstruct(&code);
        assert!(realizes(&ball, &s));
        assert_eq!(ball, set(&[0, 1]));
    }

    #[test]
    fn component_fallback_when_no_negatives_survive() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        let scheme = VertexCoverScheme::new(&g, set(&[0]), 1).unwrap();
        let s = sample(&[0, 1], &[2]);
        let code = scheme.compress(&s).unwrap();
        let ball = scheme.reconstruct(&code);
        assert!(realizes(&ball, &s));
    }

    #[test]
    fn malformed_codes_give_the_empty_set() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let scheme = VertexCoverScheme::new(&g, set(&[0]), 1).unwrap();
        let bad = LabeledCode {
            y_plus: set(&[0]),
            y_minus: set(&[]),
            bits: Bits::parse("10").unwrap(),
        };
        assert!(scheme.reconstruct(&bad).is_empty());
    }

    #[test]
    fn seeded_round_trips_realize_with_small_codes() {
        let mut rng = SplitMix64::new(90);
        for trial in 0..300u64 {
            let t = 1 + (trial % 4) as usize;
            let n = t + 2 + rng.next_below(10) as usize;
            let (g, cover) = gen_vc_graph(n, t, trial).unwrap();
            let scheme = VertexCoverScheme::new(&g, cover, t).unwrap();
            let fam = BallFamily::all(&g);
            let (s, _) = gen_sample(&fam, trial ^ 0xc0de);
            let code = scheme.compress(&s).unwrap();
            assert!(code.subsample_size() <= 2);
            assert_eq!(code.bits.len(), t + 2);
            let ball = scheme.reconstruct(&code);
            assert!(realizes(&ball, &s), "trial {trial}");
            assert!(fam.enumerate_balls().contains(&ball));
        }
    }

    #[test]
    fn ball_stabilizes_at_vertex_count() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        for v in 0..6 {
            let n = Finite(g.n() as i64);
            assert_eq!(g.ball(v, n), g.ball(v, PosInf));
            assert_eq!(g.ball(v, n), g.ball(v, n + Finite(5)));
        }
    }
}
