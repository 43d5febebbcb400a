//! Ball search shared by the reconstruction procedures: given vertices a
//! candidate ball must cover and vertices it must avoid, scan centers and
//! radii for an admissible ball.

use crate::ext_int::{ExtInt, Finite};
use crate::graph::{Graph, Vertex, VertexSet};

/// Constraints on the reconstructed ball. For a fixed center the
/// admissible radii form an interval, so the scan per center only needs
/// its endpoints.
#[derive(Debug, Clone)]
pub(crate) struct SearchSpace {
    pub centers: VertexSet,
    pub must_cover: VertexSet,
    pub must_avoid: VertexSet,
    /// Dead spaces admit nothing; used for malformed inputs.
    pub live: bool,
}

impl SearchSpace {
    pub fn dead() -> Self {
        SearchSpace {
            centers: VertexSet::new(),
            must_cover: VertexSet::new(),
            must_avoid: VertexSet::new(),
            live: false,
        }
    }

    fn radius_interval(&self, g: &Graph, c: Vertex, cap: i64) -> Option<(i64, i64)> {
        let dist = g.bfs_distances(&VertexSet::from_unsorted(vec![c]));
        let mut lo = Finite(-1);
        for u in self.must_cover.iter() {
            lo = lo.max(dist[u]);
        }
        let lo = lo.finite()?; // a must-cover vertex is unreachable
        let mut hi = cap;
        for u in self.must_avoid.iter() {
            if let Finite(d) = dist[u] {
                hi = hi.min(d - 1);
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    pub fn admits(&self, g: &Graph, c: Vertex, s: ExtInt) -> bool {
        if !self.live || !self.centers.contains(c) {
            return false;
        }
        let ball = g.ball(c, s);
        self.must_cover.is_subset_of(&ball) && self.must_avoid.is_disjoint_from(&ball)
    }

    /// First admissible ball. With `min_radius` the radius is scanned in
    /// the outer loop, minimizing it globally; otherwise centers are
    /// scanned outermost and the least radius for the first feasible
    /// center wins. Ties go to the least center.
    pub fn search(&self, g: &Graph, cap: i64, min_radius: bool) -> Option<(Vertex, ExtInt)> {
        if !self.live {
            return None;
        }
        let mut best: Option<(i64, Vertex)> = None;
        for c in self.centers.iter() {
            if let Some((lo, _)) = self.radius_interval(g, c, cap) {
                if !min_radius {
                    return Some((c, Finite(lo)));
                }
                if best.map_or(true, |(s, _)| lo < s) {
                    best = Some((lo, c));
                }
            }
        }
        best.map(|(s, c)| (c, Finite(s)))
    }

    /// Every admissible (center, radius) with radius in `-1..=cap`.
    pub fn accepted(&self, g: &Graph, cap: i64) -> Vec<(Vertex, ExtInt)> {
        let mut out = Vec::new();
        if !self.live {
            return out;
        }
        for c in self.centers.iter() {
            if let Some((lo, hi)) = self.radius_interval(g, c, cap) {
                for s in lo..=hi {
                    out.push((c, Finite(s)));
                }
            }
        }
        out
    }
}
