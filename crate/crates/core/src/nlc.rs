//! NLC decompositions, twin partitions, distance factorization across a
//! labeled cut, and the cliquewidth compression scheme.
//!
//! The scheme takes NLC decompositions as its native certificate: a graph
//! of cliquewidth at most `t` always has one with at most `t` labels. For
//! a bound `t` the compressor emits arrays of length `4t+3`.

use crate::balls::{BallFamily, Sample};
use crate::codes::ArrayCode;
use crate::error::{Error, Result};
use crate::ext_int::{ExtInt, Finite, NegInf, PosInf};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::search::SearchSpace;
use crate::tree::{NodeId, RootedBinaryTree};

pub type Label = usize;

/// An NLC decomposition: a rooted binary tree whose leaves are the graph
/// vertices, initial labels, a relabeling map per tree edge, and a label
/// relation per internal node deciding adjacency of cross-subtree pairs.
///
/// Path relabelings are composed from the per-edge maps on demand, so the
/// composition law holds by construction.
#[derive(Debug, Clone)]
pub struct NlcDecomposition {
    tree: RootedBinaryTree,
    labels: usize,
    leaf_of: Vec<NodeId>,
    vertex_of: Vec<Option<Vertex>>,
    alpha: Vec<Label>,
    /// Per non-root node: the map applied on the edge to its parent.
    edge_map: Vec<Option<Vec<Label>>>,
    /// Per internal node: relation as a labels x labels matrix, row =
    /// label under the left child, column = label under the right child.
    relation: Vec<Option<Vec<bool>>>,
}

impl NlcDecomposition {
    pub fn new(
        tree: RootedBinaryTree,
        labels: usize,
        vertex_of: Vec<Option<Vertex>>,
        alpha: Vec<Label>,
        edge_map: Vec<Option<Vec<Label>>>,
        relation: Vec<Option<Vec<bool>>>,
    ) -> Result<Self> {
        if labels == 0 {
            return Err(Error::InvalidNlc("at least one label is required".into()));
        }
        let nodes = tree.len();
        if vertex_of.len() != nodes || edge_map.len() != nodes || relation.len() != nodes {
            return Err(Error::InvalidNlc("per-node tables differ in length".into()));
        }
        let n = alpha.len();
        let mut leaf_of = vec![usize::MAX; n];
        for x in 0..nodes {
            let child_count = tree.children(x).count();
            match vertex_of[x] {
                Some(v) => {
                    if child_count != 0 {
                        return Err(Error::InvalidNlc(format!(
                            "node {x} carries a vertex but has children"
                        )));
                    }
                    if v >= n || leaf_of[v] != usize::MAX {
                        return Err(Error::InvalidNlc(format!(
                            "vertex {v} is missing or duplicated on the leaves"
                        )));
                    }
                    leaf_of[v] = x;
                }
                None => {
                    if child_count != 2 {
                        return Err(Error::InvalidNlc(format!(
                            "internal node {x} must have exactly two children"
                        )));
                    }
                    match &relation[x] {
                        Some(r) if r.len() == labels * labels => {}
                        _ => {
                            return Err(Error::InvalidNlc(format!(
                                "internal node {x} lacks a {labels}x{labels} relation"
                            )))
                        }
                    }
                }
            }
            let needs_map = x != tree.root();
            match &edge_map[x] {
                Some(m) if needs_map => {
                    if m.len() != labels || m.iter().any(|&l| l >= labels) {
                        return Err(Error::InvalidNlc(format!(
                            "edge map at node {x} is not a function on the labels"
                        )));
                    }
                }
                None if !needs_map => {}
                _ => {
                    return Err(Error::InvalidNlc(format!(
                        "node {x} edge map presence does not match the tree"
                    )))
                }
            }
        }
        if leaf_of.iter().any(|&x| x == usize::MAX) {
            return Err(Error::InvalidNlc(
                "leaf set does not cover the vertex set".into(),
            ));
        }
        if alpha.iter().any(|&l| l >= labels) {
            return Err(Error::InvalidNlc("initial label out of range".into()));
        }
        Ok(NlcDecomposition {
            tree,
            labels,
            leaf_of,
            vertex_of,
            alpha,
            edge_map,
            relation,
        })
    }

    pub fn tree(&self) -> &RootedBinaryTree {
        &self.tree
    }

    pub fn labels(&self) -> usize {
        self.labels
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn leaf_of(&self, v: Vertex) -> NodeId {
        self.leaf_of[v]
    }

    pub fn vertex_of(&self, x: NodeId) -> Option<Vertex> {
        self.vertex_of[x]
    }

    pub fn alpha(&self, v: Vertex) -> Label {
        self.alpha[v]
    }

    pub fn edge_map(&self, x: NodeId) -> Option<&[Label]> {
        self.edge_map[x].as_deref()
    }

    pub fn relation_contains(&self, x: NodeId, left: Label, right: Label) -> bool {
        self.relation[x]
            .as_ref()
            .map(|r| r[left * self.labels + right])
            .unwrap_or(false)
    }

    /// The label of `v` as seen from its ancestor node `at`: the initial
    /// label pushed through every edge map on the climb.
    pub fn label_at(&self, at: NodeId, v: Vertex) -> Label {
        let mut node = self.leaf_of[v];
        let mut label = self.alpha[v];
        while node != at {
            label = self.edge_map[node].as_ref().expect("non-root node")[label];
            node = self.tree.parent(node).expect("`at` must be an ancestor");
        }
        label
    }

    /// Graph vertices whose leaves lie in the subtree of `y`.
    pub fn leaves_below(&self, y: NodeId) -> VertexSet {
        self.tree
            .subtree_nodes(y)
            .iter()
            .filter_map(|x| self.vertex_of[x])
            .collect()
    }

    /// The vertices below `y` grouped by their label at `y`. Classes may
    /// be empty; the vector always has one entry per label.
    pub fn twin_classes(&self, y: NodeId) -> Vec<VertexSet> {
        let mut classes = vec![Vec::new(); self.labels];
        for v in self.leaves_below(y).iter() {
            classes[self.label_at(y, v)].push(v);
        }
        classes.into_iter().map(VertexSet::from_unsorted).collect()
    }

    /// The graph that the decomposition defines: vertices are the leaves
    /// and a cross-subtree pair is an edge exactly when its labels at the
    /// lca are related there.
    pub fn realize_graph(&self) -> Graph {
        let n = self.n();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.implied_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, &edges).expect("implied edges are simple")
    }

    fn implied_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (lu, lv) = (self.leaf_of[u], self.leaf_of[v]);
        let a = self.tree.lca(lu, lv);
        let left = self.tree.left(a).expect("lca of two leaves is internal");
        let (x, y) = if self.tree.is_ancestor_of(left, lu) {
            (u, v)
        } else {
            (v, u)
        };
        self.relation_contains(a, self.label_at(a, x), self.label_at(a, y))
    }

    /// Checks the adjacency law against `graph` over every leaf pair and
    /// reports the first violating pair.
    pub fn validate_against(&self, graph: &Graph) -> Result<()> {
        if graph.n() != self.n() {
            return Err(Error::InvalidNlc(format!(
                "decomposition is over {} vertices, graph has {}",
                self.n(),
                graph.n()
            )));
        }
        for u in 0..self.n() {
            for v in u + 1..self.n() {
                let implied = self.implied_edge(u, v);
                if implied != graph.has_edge(u, v) {
                    return Err(Error::InvalidNlc(format!(
                        "adjacency law fails on the pair ({u}, {v}): labels say {implied}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Which side of the ordered bipartition the classes partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionedSide {
    First,
    Second,
}

/// A partition of one side of a bipartition into classes with identical
/// neighborhoods on the other side.
#[derive(Debug, Clone)]
pub struct TwinPartition {
    pub side: PartitionedSide,
    pub classes: Vec<VertexSet>,
}

/// Orientation for [`twin_partition_at`]: whether the subtree side of the
/// cut comes first or second in the returned bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutSide {
    Below,
    Above,
}

/// The bipartition induced by the tree edge above `y` together with the
/// label classes of the subtree side, which form a twin partition with
/// respect to the other side.
pub fn twin_partition_at(
    decomposition: &NlcDecomposition,
    graph: &Graph,
    y: NodeId,
    side: CutSide,
) -> Result<((VertexSet, VertexSet), TwinPartition)> {
    if y == decomposition.tree().root() {
        return Err(Error::InvalidInput(
            "the cut is an edge of the tree; the root has none above it".into(),
        ));
    }
    let below = decomposition.leaves_below(y);
    let above = graph.all_vertices().difference(&below);
    let classes = decomposition.twin_classes(y);
    debug_assert!(twin_property_holds(graph, &classes, &above));
    let (pair, partition) = match side {
        CutSide::Below => (
            (below, above),
            TwinPartition {
                side: PartitionedSide::First,
                classes,
            },
        ),
        CutSide::Above => (
            (above, below),
            TwinPartition {
                side: PartitionedSide::Second,
                classes,
            },
        ),
    };
    Ok((pair, partition))
}

fn twin_property_holds(graph: &Graph, classes: &[VertexSet], other: &VertexSet) -> bool {
    classes.iter().all(|class| {
        let mut shared: Option<Vec<Vertex>> = None;
        class.iter().all(|v| {
            let nb: Vec<Vertex> = graph
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| other.contains(w))
                .collect();
            match &shared {
                Some(prev) => *prev == nb,
                None => {
                    shared = Some(nb);
                    true
                }
            }
        })
    })
}

/// Distance from `c0` to `d0` computed through the twin classes of the
/// first side: the minimum over classes of (distance to the class, plus
/// distance from the class to `d0` inside the class-and-second-side
/// subgraph). Equals the plain BFS distance whenever `classes` is a twin
/// partition of `first`.
pub fn dist_via_twin(
    graph: &Graph,
    first: &VertexSet,
    second: &VertexSet,
    classes: &[VertexSet],
    c0: Vertex,
    d0: Vertex,
) -> ExtInt {
    assert!(first.contains(c0), "c0 must lie in the partitioned side");
    assert!(second.contains(d0), "d0 must lie in the other side");
    debug_assert!(classes.iter().all(|cl| cl.is_subset_of(first)));
    debug_assert_eq!(
        classes.iter().map(VertexSet::len).sum::<usize>(),
        first.len(),
        "classes must partition the first side"
    );
    let mut best = PosInf;
    for class in classes {
        if class.is_empty() {
            continue;
        }
        let to_class = graph.bfs_distances(class)[c0];
        if to_class == PosInf {
            continue;
        }
        let mut allowed = vec![false; graph.n()];
        for v in second.iter().chain(class.iter()) {
            allowed[v] = true;
        }
        let through = graph.bfs_within(&allowed, class)[d0];
        if through == PosInf {
            continue;
        }
        best = best.min(to_class + through);
    }
    best
}

/// The cliquewidth scheme over an NLC decomposition with at most `t`
/// labels: array codes of length `4t+3`.
#[derive(Debug, Clone)]
pub struct NlcScheme<'a> {
    graph: &'a Graph,
    decomposition: &'a NlcDecomposition,
    t: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CutKind {
    /// Boundary edge below the component: labeled side under the child.
    Down,
    /// Boundary edge above the component: centers under the child.
    Up,
}

/// One side of the search derived from a boundary edge: the bipartition,
/// the twin classes, and per-class distance tables in the metric the
/// scheme uses on that side.
struct CutData {
    /// Side of the bipartition the candidate centers live in.
    near: VertexSet,
    /// Side holding the labeled vertices this cut is responsible for.
    far: VertexSet,
    /// Twin classes, padded to the label bound.
    classes: Vec<VertexSet>,
    /// Per class: distances from the class in the relevant metric.
    class_dist: Vec<Vec<ExtInt>>,
}

impl<'a> NlcScheme<'a> {
    pub fn new(graph: &'a Graph, decomposition: &'a NlcDecomposition, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidInput("the label bound must be positive".into()));
        }
        if decomposition.labels() > t {
            return Err(Error::InvalidInput(format!(
                "decomposition uses {} labels, above the claimed bound {t}",
                decomposition.labels()
            )));
        }
        decomposition.validate_against(graph)?;
        Ok(NlcScheme {
            graph,
            decomposition,
            t,
        })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn decomposition(&self) -> &NlcDecomposition {
        self.decomposition
    }

    pub fn label_bound(&self) -> usize {
        self.t
    }

    pub fn code_len(&self) -> usize {
        4 * self.t + 3
    }

    pub fn compress(&self, sample: &Sample) -> Result<ArrayCode> {
        let (center, radius) = BallFamily::all(self.graph)
            .find_witness(sample)
            .ok_or(Error::UnrealizableSample)?;
        let len = self.code_len();
        let support = sample.support();

        if support.is_empty() {
            return Ok(ArrayCode::blank(len));
        }
        if sample.minus().is_empty() {
            let x = sample.plus().first().expect("plus side is non-empty");
            let mut code = ArrayCode::blank(len);
            code.set(len - 2, Some(x));
            code.set(len - 1, Some(x));
            return Ok(code);
        }
        if support.contains(center) {
            let dist_c = self
                .graph
                .bfs_distances(&VertexSet::from_unsorted(vec![center]));
            let x_minus = sample
                .minus()
                .iter()
                .min_by_key(|&x| dist_c[x])
                .expect("minus side is non-empty");
            let mut code = ArrayCode::blank(len);
            code.set(0, Some(center));
            code.set(3, Some(x_minus));
            code.set(4, Some(x_minus));
            return Ok(code);
        }

        // Main case: the center's leaf avoids the closure of the labeled
        // leaves, so it sits in a component with at most two boundary
        // edges.
        let tree = self.decomposition.tree();
        let pool: VertexSet = support.iter().map(|x| self.decomposition.leaf_of(x)).collect();
        let closure = tree.lca_closure(&pool);
        let center_leaf = self.decomposition.leaf_of(center);
        debug_assert!(!closure.contains(center_leaf));
        let component = tree
            .components_without(&closure)
            .into_iter()
            .map(|(c, _)| c)
            .find(|c| c.contains(center_leaf))
            .expect("center leaf is in some component");
        let node_code = tree.encode_subtree(&pool, &component)?;
        let header: Vec<Option<Vertex>> = node_code
            .into_iter()
            .map(|z| z.map(|z| self.decomposition.vertex_of(z).expect("pool nodes are leaves")))
            .collect();

        let (down, up) = self.classify_boundary(&component)?;
        let (first, second) = self.cut_data(down, up);
        debug_assert!(first.near.contains(center) && second.near.contains(center));

        let mut entries = header;
        for (cut, kind) in [(&first, CutKind::Down), (&second, CutKind::Up)] {
            for class_idx in 0..self.t {
                let (plus, minus) =
                    self.bound_witnesses(sample, cut, class_idx, center, radius, kind);
                entries.push(plus);
                entries.push(minus);
            }
        }
        debug_assert_eq!(entries.len(), len);
        let code = ArrayCode::new(entries);
        debug_assert!(!matches!(
            (code.get(3), code.get(4)),
            (Some(a), Some(b)) if a == b
        ));
        debug_assert!(!matches!(
            (code.get(len - 2), code.get(len - 1)),
            (Some(a), Some(b)) if a == b
        ));
        debug_assert!({
            let space = self.search_space(&code);
            space.admits(self.graph, center, radius)
        });
        Ok(code)
    }

    /// Witnesses for the distance bounds of one class on one side of the
    /// cut. The up-cut budgets the distance from the center to the class
    /// in the whole graph, the down-cut inside the near side plus the
    /// class.
    ///
    /// Exclusion candidates on the up-cut are restricted to negatives on
    /// the far side: a negative sitting inside an up-cut class belongs to
    /// the other chain, and counting its zero self-distance would demand
    /// that admissible balls avoid the entire far side, which even the
    /// fixed witness ball cannot satisfy.
    fn bound_witnesses(
        &self,
        sample: &Sample,
        cut: &CutData,
        class_idx: usize,
        center: Vertex,
        radius: ExtInt,
        kind: CutKind,
    ) -> (Option<Vertex>, Option<Vertex>) {
        let dist = &cut.class_dist[class_idx];
        let class = &cut.classes[class_idx];
        let to_class = if class.is_empty() {
            PosInf
        } else {
            match kind {
                CutKind::Up => self.graph.bfs_distances(class)[center],
                CutKind::Down => {
                    let mut allowed = vec![false; self.graph.n()];
                    for v in cut.near.iter().chain(class.iter()) {
                        allowed[v] = true;
                    }
                    self.graph.bfs_within(&allowed, class)[center]
                }
            }
        };
        let budget = if to_class == PosInf {
            NegInf
        } else {
            radius - to_class
        };

        let mut cover = Finite(-1);
        let mut cover_witness = None;
        for x in sample.plus().iter() {
            if dist[x] <= budget && dist[x] > cover {
                cover = dist[x];
                cover_witness = Some(x);
            }
        }
        let mut exclude = PosInf;
        let mut exclude_witness = None;
        for x in sample.minus().iter() {
            if kind == CutKind::Up && !cut.far.contains(x) {
                continue;
            }
            if dist[x] < exclude {
                exclude = dist[x];
                exclude_witness = Some(x);
            }
        }
        if exclude == PosInf {
            exclude_witness = None;
        }
        (cover_witness, exclude_witness)
    }

    /// Splits the boundary edges of the component into the at most one
    /// down-edge (component on the parent side) and at most one up-edge
    /// (component inside the child subtree).
    fn classify_boundary(
        &self,
        component: &crate::tree::Subtree,
    ) -> Result<(Option<NodeId>, Option<NodeId>)> {
        let tree = self.decomposition.tree();
        let mut down = Vec::new();
        let mut up = Vec::new();
        for x in component.nodes().iter() {
            match tree.parent(x) {
                Some(p) if !component.contains(p) => up.push(x),
                None => {}
                _ => {}
            }
            for c in tree.children(x) {
                if !component.contains(c) {
                    down.push(c);
                }
            }
        }
        if down.len() > 1 || up.len() > 1 {
            return Err(Error::Contract(format!(
                "component has {} down and {} up boundary edges",
                down.len(),
                up.len()
            )));
        }
        Ok((down.first().copied(), up.first().copied()))
    }

    /// Builds the two per-cut search structures. The down-cut at `down`
    /// (if any) has its labeled side below the boundary node and uses the
    /// full graph metric; the up-cut at `up` keeps the component inside
    /// the subtree and measures the far side within class-plus-far
    /// subgraphs. Absent cuts degenerate to (everything, nothing).
    fn cut_data(&self, down: Option<NodeId>, up: Option<NodeId>) -> (CutData, CutData) {
        let g = self.graph;
        let all = g.all_vertices();
        let degenerate = |near: VertexSet| CutData {
            near,
            far: VertexSet::new(),
            classes: vec![VertexSet::new(); self.t],
            class_dist: (0..self.t).map(|_| vec![PosInf; g.n()]).collect(),
        };

        let first = match down {
            Some(y) => {
                let far = self.decomposition.leaves_below(y);
                let near = all.difference(&far);
                let classes = self.padded_classes(y);
                let class_dist = classes.iter().map(|c| g.bfs_distances(c)).collect();
                CutData {
                    near,
                    far,
                    classes,
                    class_dist,
                }
            }
            None => degenerate(all.clone()),
        };
        let second = match up {
            Some(y) => {
                let near = self.decomposition.leaves_below(y);
                let far = all.difference(&near);
                let classes = self.padded_classes(y);
                let class_dist = classes
                    .iter()
                    .map(|class| {
                        let mut allowed = vec![false; g.n()];
                        for v in far.iter().chain(class.iter()) {
                            allowed[v] = true;
                        }
                        g.bfs_within(&allowed, class)
                    })
                    .collect();
                CutData {
                    near,
                    far,
                    classes,
                    class_dist,
                }
            }
            None => degenerate(all),
        };
        (first, second)
    }

    fn padded_classes(&self, y: NodeId) -> Vec<VertexSet> {
        let mut classes = self.decomposition.twin_classes(y);
        classes.resize(self.t, VertexSet::new());
        classes
    }

    pub fn reconstruct(&self, code: &ArrayCode) -> VertexSet {
        self.reconstruct_detailed(code).0
    }

    /// Reconstruction plus the ball parameters when a ball (rather than a
    /// degenerate fallback) was chosen.
    pub fn reconstruct_detailed(&self, code: &ArrayCode) -> (VertexSet, Option<(Vertex, ExtInt)>) {
        let len = self.code_len();
        assert_eq!(code.len(), len, "code length mismatch");
        let n = self.graph.n();
        if code.entries().iter().flatten().any(|&v| v >= n) {
            return (VertexSet::new(), None);
        }
        if code.is_all_blank() {
            return (VertexSet::new(), None);
        }
        if let (Some(a), Some(b)) = (code.get(len - 2), code.get(len - 1)) {
            if a == b {
                // Positive-only sample: the whole component of the witness.
                return (self.graph.ball(a, PosInf), Some((a, Finite(n as i64))));
            }
        }
        if let (Some(a), Some(b)) = (code.get(3), code.get(4)) {
            if a == b {
                let Some(center) = code.get(0) else {
                    return (VertexSet::new(), None);
                };
                let radius = self.graph.dist(center, a) - Finite(1);
                return (self.graph.ball(center, radius), Some((center, radius)));
            }
        }
        let space = self.search_space(code);
        match space.search(self.graph, n as i64, false) {
            Some((c, s)) => (self.graph.ball(c, s), Some((c, s))),
            None => (VertexSet::new(), None),
        }
    }

    /// Every (center, radius) the main-case search would accept; empty for
    /// the degenerate branches, which do not search.
    pub fn accepted_balls(&self, code: &ArrayCode) -> Vec<(Vertex, ExtInt)> {
        let len = self.code_len();
        assert_eq!(code.len(), len, "code length mismatch");
        let pair_taken = |a: Option<Vertex>, b: Option<Vertex>| matches!((a, b), (Some(x), Some(y)) if x == y);
        if code.is_all_blank()
            || pair_taken(code.get(len - 2), code.get(len - 1))
            || pair_taken(code.get(3), code.get(4))
        {
            return Vec::new();
        }
        self.search_space(code).accepted(self.graph, self.graph.n() as i64)
    }

    fn search_space(&self, code: &ArrayCode) -> SearchSpace {
        let tree = self.decomposition.tree();
        let header: Vec<Option<NodeId>> = (0..3)
            .map(|i| code.get(i).map(|v| self.decomposition.leaf_of(v)))
            .collect();
        let component = tree.decode_subtree([header[0], header[1], header[2]]);
        let Ok((down, up)) = self.classify_boundary(&component) else {
            return SearchSpace::dead();
        };
        let (first, second) = self.cut_data(down, up);

        let mut must_cover = VertexSet::new();
        let mut must_avoid = VertexSet::new();
        for (cut_idx, cut) in [&first, &second].into_iter().enumerate() {
            let mut may_touch = VertexSet::new();
            for class_idx in 0..self.t {
                let base = 3 + 2 * (cut_idx * self.t + class_idx);
                let dist = &cut.class_dist[class_idx];
                let cover = match code.get(base) {
                    Some(x) => dist[x],
                    None => Finite(-1),
                };
                let exclude = match code.get(base + 1) {
                    Some(x) => dist[x],
                    None => PosInf,
                };
                for u in cut.far.iter() {
                    if dist[u].is_finite() && dist[u] <= cover {
                        must_cover.insert(u);
                    }
                    if dist[u].is_finite() && dist[u] <= exclude - Finite(1) {
                        may_touch.insert(u);
                    }
                }
            }
            for u in cut.far.difference(&may_touch).iter() {
                must_avoid.insert(u);
            }
        }
        SearchSpace {
            centers: first.near.intersection(&second.near),
            must_cover,
            must_avoid,
            live: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balls::{realizes, Sample};
    use crate::generate::{gen_nlc_graph, gen_sample, SplitMix64};

    fn set(items: &[Vertex]) -> VertexSet {
        VertexSet::from_unsorted(items.to_vec())
    }

    fn sample(plus: &[Vertex], minus: &[Vertex]) -> Sample {
        Sample::new(set(plus), set(minus)).unwrap()
    }

    /// Decomposition of K_2 with one label and the root relating (0, 0).
    fn k2_decomposition(related: bool) -> NlcDecomposition {
        let tree =
            RootedBinaryTree::new(0, vec![Some(1), None, None], vec![Some(2), None, None]).unwrap();
        NlcDecomposition::new(
            tree,
            1,
            vec![None, Some(0), Some(1)],
            vec![0, 0],
            vec![None, Some(vec![0]), Some(vec![0])],
            vec![Some(vec![related]), None, None],
        )
        .unwrap()
    }

    #[test]
    fn single_vertex_decomposition_validates() {
        let d = NlcDecomposition::new(
            RootedBinaryTree::singleton(),
            1,
            vec![Some(0)],
            vec![0],
            vec![None],
            vec![None],
        )
        .unwrap();
        let g = Graph::empty(1);
        assert!(d.validate_against(&g).is_ok());
    }

    #[test]
    fn k2_validation() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        assert!(k2_decomposition(true).validate_against(&g).is_ok());
        let err = k2_decomposition(false).validate_against(&g).unwrap_err();
        assert!(err.to_string().contains("(0, 1)"), "{err}");
    }

    #[test]
    fn full_relation_realizes_complete_graphs() {
        // With every pair related at every node, adjacency reduces to
        // being in different subtrees of the lca, which always holds.
        let mut rng = SplitMix64::new(5);
        let (tree, vertex_of) = crate::generate::random_full_binary_tree(6, &mut rng);
        let edge_map = (0..tree.len())
            .map(|x| (x != tree.root()).then(|| vec![0]))
            .collect();
        let relation = (0..tree.len())
            .map(|x| (!tree.is_leaf(x)).then(|| vec![true]))
            .collect();
        let d = NlcDecomposition::new(tree, 1, vertex_of, vec![0; 6], edge_map, relation).unwrap();
        let g = d.realize_graph();
        assert_eq!(g.edge_count(), 6 * 5 / 2);
        assert!(d.validate_against(&g).is_ok());
    }

    #[test]
    fn twin_partition_at_a_leaf_is_a_singleton_class() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let d = k2_decomposition(true);
        let y = d.leaf_of(0);
        let ((c, dset), partition) = twin_partition_at(&d, &g, y, CutSide::Below).unwrap();
        assert_eq!(c, set(&[0]));
        assert_eq!(dset, set(&[1]));
        let nonempty: Vec<_> = partition.classes.iter().filter(|c| !c.is_empty()).collect();
        assert_eq!(nonempty.len(), 1);
        assert_eq!(nonempty[0], &set(&[0]));
    }

    #[test]
    fn twin_partition_rejects_the_root() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let d = k2_decomposition(true);
        let root = d.tree().root();
        assert!(twin_partition_at(&d, &g, root, CutSide::Below).is_err());
    }

    #[test]
    fn twin_partition_classes_cover_the_side() {
        for seed in 0..30u64 {
            let (g, d) = gen_nlc_graph(10, 2, seed).unwrap();
            for y in 0..d.tree().len() {
                if y == d.tree().root() {
                    continue;
                }
                let ((c, _), partition) = twin_partition_at(&d, &g, y, CutSide::Below).unwrap();
                let mut union = VertexSet::new();
                let mut total = 0;
                for class in &partition.classes {
                    total += class.len();
                    union = union.union(class);
                }
                assert_eq!(union, c);
                assert_eq!(total, c.len());
            }
        }
    }

    #[test]
    fn dist_via_twin_adjacent_pair() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let d = dist_via_twin(&g, &set(&[0]), &set(&[1]), &[set(&[0])], 0, 1);
        assert_eq!(d, Finite(1));
    }

    #[test]
    fn dist_via_twin_unreachable_is_infinite() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let d = dist_via_twin(&g, &set(&[0, 1]), &set(&[2, 3]), &[set(&[0, 1])], 0, 3);
        assert_eq!(d, PosInf);
        assert_eq!(g.dist(0, 3), PosInf);
    }

    #[test]
    fn dist_via_twin_matches_bfs_on_seeded_graphs() {
        let mut rng = SplitMix64::new(31);
        for _ in 0..120 {
            let n = 4 + rng.next_below(10) as usize;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.next_below(4) == 0 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let first: VertexSet = (0..n).filter(|_| rng.next_below(2) == 0).collect();
            let second = g.all_vertices().difference(&first);
            if first.is_empty() || second.is_empty() {
                continue;
            }
            // Exact twin classes: group the first side by neighborhood on
            // the second side.
            let mut groups: std::collections::BTreeMap<Vec<Vertex>, Vec<Vertex>> =
                std::collections::BTreeMap::new();
            for v in first.iter() {
                let key: Vec<Vertex> = g
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| second.contains(w))
                    .collect();
                groups.entry(key).or_default().push(v);
            }
            let classes: Vec<VertexSet> = groups
                .into_values()
                .map(VertexSet::from_unsorted)
                .collect();
            for c0 in first.iter() {
                for d0 in second.iter() {
                    assert_eq!(
                        dist_via_twin(&g, &first, &second, &classes, c0, d0),
                        g.dist(c0, d0)
                    );
                }
            }
        }
    }

    #[test]
    fn empty_sample_compresses_to_blanks() {
        let (g, d) = gen_nlc_graph(8, 2, 3).unwrap();
        let scheme = NlcScheme::new(&g, &d, 2).unwrap();
        let code = scheme.compress(&sample(&[], &[])).unwrap();
        assert_eq!(code.len(), 4 * 2 + 3);
        assert!(code.is_all_blank());
        let ball = scheme.reconstruct(&code);
        assert!(ball.is_empty());
    }

    #[test]
    fn positive_only_sample_uses_the_tail_pair() {
        let (g, d) = gen_nlc_graph(8, 2, 4).unwrap();
        let scheme = NlcScheme::new(&g, &d, 2).unwrap();
        let s = sample(&[5], &[]);
        let code = scheme.compress(&s).unwrap();
        let len = code.len();
        assert_eq!(code.get(len - 2), Some(5));
        assert_eq!(code.get(len - 1), Some(5));
        assert!(code.entries()[..len - 2].iter().all(Option::is_none));
        let ball = scheme.reconstruct(&code);
        assert!(realizes(&ball, &s));
        assert_eq!(ball, g.ball(5, PosInf));
    }

    #[test]
    fn center_in_sample_uses_the_head_pair() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let d = k2_decomposition(true);
        let scheme = NlcScheme::new(&g, &d, 1).unwrap();
        let s = sample(&[0], &[1]);
        let code = scheme.compress(&s).unwrap();
        let expect: Vec<Option<Vertex>> =
            vec![Some(0), None, None, Some(1), Some(1), None, None];
        assert_eq!(code.entries(), expect.as_slice());
        let ball = scheme.reconstruct(&code);
        assert!(realizes(&ball, &s));
        assert_eq!(ball, set(&[0]));
    }

    #[test]
    fn seeded_round_trips_realize_and_stay_proper() {
        for seed in 0..120u64 {
            let t = 1 + (seed % 3) as usize;
            let n = 4 + (seed % 12) as usize;
            let (g, d) = gen_nlc_graph(n, t, seed).unwrap();
            let scheme = NlcScheme::new(&g, &d, t).unwrap();
            let fam = BallFamily::all(&g);
            let (s, _) = gen_sample(&fam, seed ^ 0x5a5a);
            let code = scheme.compress(&s).unwrap();
            assert_eq!(code.len(), 4 * t + 3);
            for v in code.support().iter() {
                assert!(s.support().contains(v));
            }
            let ball = scheme.reconstruct(&code);
            assert!(realizes(&ball, &s), "round trip failed at seed {seed}");
            assert!(fam.enumerate_balls().contains(&ball));
            for (c, r) in scheme.accepted_balls(&code) {
                assert!(realizes(&g.ball(c, r), &s));
            }
        }
    }
}
