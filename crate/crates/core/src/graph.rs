//! Finite simple undirected graphs with dense integer vertex ids, the BFS
//! metric, and balls.
//!
//! Vertices are `0..n-1`. Every canonical order used by the compression
//! schemes is the ascending id order.

use crate::error::{Error, Result};
use crate::ext_int::{ExtInt, Finite, PosInf};
use std::collections::VecDeque;
use std::fmt;

pub type Vertex = usize;

/// A sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet {
    items: Vec<Vertex>,
}

impl VertexSet {
    pub fn new() -> Self {
        VertexSet { items: Vec::new() }
    }

    /// Builds a set from arbitrary ids, sorting and deduplicating.
    pub fn from_unsorted(mut items: Vec<Vertex>) -> Self {
        items.sort_unstable();
        items.dedup();
        VertexSet { items }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.items.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.items.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.items
    }

    pub fn insert(&mut self, v: Vertex) {
        if let Err(pos) = self.items.binary_search(&v) {
            self.items.insert(pos, v);
        }
    }

    pub fn first(&self) -> Option<Vertex> {
        self.items.first().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut items = Vec::with_capacity(self.len() + other.len());
        items.extend_from_slice(&self.items);
        items.extend_from_slice(&other.items);
        VertexSet::from_unsorted(items)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            items: self.iter().filter(|&v| other.contains(v)).collect(),
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            items: self.iter().filter(|&v| !other.contains(v)).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint_from(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(items: Vec<Vertex>) -> Self {
        VertexSet::from_unsorted(items)
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet::from_unsorted(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = Vertex;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Vertex>>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter().copied()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// An undirected simple graph on vertices `0..n-1`.
///
/// Neighbor lists are sorted ascending, duplicate-free, and never contain
/// the owner; adjacency is symmetric by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(Error::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn all_vertices(&self) -> VertexSet {
        (0..self.n()).collect()
    }

    fn check_vertex(&self, v: Vertex) {
        assert!(
            v < self.n(),
            "vertex {v} out of range for a graph on {} vertices",
            self.n()
        );
    }

    /// Multi-source BFS distances. Every vertex unreachable from `sources`
    /// is at `+inf`; with empty `sources` everything is at `+inf`
    /// (`min {} = +inf`).
    pub fn bfs_distances(&self, sources: &VertexSet) -> Vec<ExtInt> {
        let allowed = vec![true; self.n()];
        self.bfs_within(&allowed, sources)
    }

    /// BFS distances in the subgraph induced by `allowed`. Sources outside
    /// `allowed` are ignored; vertices outside `allowed` stay at `+inf`.
    pub fn bfs_within(&self, allowed: &[bool], sources: &VertexSet) -> Vec<ExtInt> {
        assert_eq!(allowed.len(), self.n());
        let mut dist = vec![PosInf; self.n()];
        let mut queue = VecDeque::new();
        for v in sources.iter() {
            self.check_vertex(v);
            if allowed[v] && dist[v] == PosInf {
                dist[v] = Finite(0);
                queue.push_back(v);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_finite();
            for &w in &self.adj[u] {
                if allowed[w] && dist[w] == PosInf {
                    dist[w] = Finite(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn dist(&self, u: Vertex, v: Vertex) -> ExtInt {
        let sources = VertexSet::from_unsorted(vec![u]);
        self.bfs_distances(&sources)[v]
    }

    /// Minimum distance between two vertex sets; `+inf` when either set is
    /// empty or no path exists, `0` when they intersect.
    pub fn dist_sets(&self, c: &VertexSet, d: &VertexSet) -> ExtInt {
        if c.is_empty() || d.is_empty() {
            return PosInf;
        }
        let dist = self.bfs_distances(c);
        d.iter().map(|v| dist[v]).min().unwrap_or(PosInf)
    }

    /// The ball of radius `r` around `c`: all vertices at distance `<= r`.
    /// Empty when `r < 0`; the connected component of `c` when `r = +inf`.
    pub fn ball(&self, c: Vertex, r: ExtInt) -> VertexSet {
        self.check_vertex(c);
        self.ball_of_set(&VertexSet::from_unsorted(vec![c]), r)
    }

    /// Union of the balls of radius `r` around the vertices of `xs`.
    pub fn ball_of_set(&self, xs: &VertexSet, r: ExtInt) -> VertexSet {
        let dist = self.bfs_distances(xs);
        collect_ball(&dist, r)
    }

    /// Ball of `sources` inside the subgraph induced by `allowed`.
    pub fn ball_within(&self, allowed: &[bool], sources: &VertexSet, r: ExtInt) -> VertexSet {
        let dist = self.bfs_within(allowed, sources);
        collect_ball(&dist, r)
    }

    /// The subgraph induced by `s`, together with the new-to-old id map.
    /// New ids follow the sorted order of `s`, so the map is monotone.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<Vertex>) {
        let new_to_old: Vec<Vertex> = s.iter().collect();
        let mut old_to_new = vec![usize::MAX; self.n()];
        for (new, &old) in new_to_old.iter().enumerate() {
            self.check_vertex(old);
            old_to_new[old] = new;
        }
        let mut adj = vec![Vec::new(); new_to_old.len()];
        for (new, &old) in new_to_old.iter().enumerate() {
            for &w in &self.adj[old] {
                if w < self.n() && old_to_new[w] != usize::MAX {
                    adj[new].push(old_to_new[w]);
                }
            }
        }
        // Neighbor lists inherit sortedness because the id map is monotone.
        (Graph { adj }, new_to_old)
    }
}

fn collect_ball(dist: &[ExtInt], r: ExtInt) -> VertexSet {
    dist.iter()
        .enumerate()
        .filter(|&(_, &d)| d.is_finite() && d <= r)
        .map(|(v, _)| v)
        .collect()
}
