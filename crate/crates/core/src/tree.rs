//! Rooted ordered binary trees: LCA machinery, LCA closures, components of
//! `T - Z`, and a three-entry encoding of the subtrees those closures carve
//! out.
//!
//! Node ids are dense `0..len`, so node sets reuse [`VertexSet`].

use crate::error::{Error, Result};
use crate::graph::VertexSet;

pub type NodeId = usize;

/// A rooted tree in which every node has at most one left and at most one
/// right child.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedBinaryTree {
    root: NodeId,
    parent: Vec<Option<NodeId>>,
    left: Vec<Option<NodeId>>,
    right: Vec<Option<NodeId>>,
    depth: Vec<usize>,
}

impl RootedBinaryTree {
    pub fn new(root: NodeId, left: Vec<Option<NodeId>>, right: Vec<Option<NodeId>>) -> Result<Self> {
        let n = left.len();
        if right.len() != n {
            return Err(Error::InvalidInput(
                "left/right child tables differ in length".into(),
            ));
        }
        if root >= n {
            return Err(Error::InvalidInput(format!("root {root} out of range")));
        }
        let mut parent = vec![None; n];
        for x in 0..n {
            for child in [left[x], right[x]].into_iter().flatten() {
                if child >= n {
                    return Err(Error::InvalidInput(format!("child {child} out of range")));
                }
                if child == x || parent[child].is_some() {
                    return Err(Error::InvalidInput(format!(
                        "node {child} has more than one parent"
                    )));
                }
                parent[child] = Some(x);
            }
        }
        if parent[root].is_some() {
            return Err(Error::InvalidInput("root has a parent".into()));
        }
        // Depths via BFS; also certifies connectivity and acyclicity.
        let mut depth = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::from([root]);
        depth[root] = 0;
        let mut seen = 1;
        while let Some(x) = queue.pop_front() {
            for child in [left[x], right[x]].into_iter().flatten() {
                depth[child] = depth[x] + 1;
                seen += 1;
                queue.push_back(child);
            }
        }
        if seen != n {
            return Err(Error::InvalidInput(
                "tree is not connected from the root".into(),
            ));
        }
        Ok(RootedBinaryTree {
            root,
            parent,
            left,
            right,
            depth,
        })
    }

    /// The one-node tree.
    pub fn singleton() -> Self {
        RootedBinaryTree::new(0, vec![None], vec![None]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn parent(&self, x: NodeId) -> Option<NodeId> {
        self.parent[x]
    }

    pub fn left(&self, x: NodeId) -> Option<NodeId> {
        self.left[x]
    }

    pub fn right(&self, x: NodeId) -> Option<NodeId> {
        self.right[x]
    }

    pub fn depth(&self, x: NodeId) -> usize {
        self.depth[x]
    }

    pub fn children(&self, x: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        [self.left[x], self.right[x]].into_iter().flatten()
    }

    pub fn is_leaf(&self, x: NodeId) -> bool {
        self.left[x].is_none() && self.right[x].is_none()
    }

    pub fn leaves(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.len()).filter(|&x| self.is_leaf(x))
    }

    pub fn all_nodes(&self) -> VertexSet {
        (0..self.len()).collect()
    }

    /// Lowest common ancestor by walking up; `lca(x, x) = x`.
    pub fn lca(&self, x: NodeId, y: NodeId) -> NodeId {
        let (mut x, mut y) = (x, y);
        while self.depth[x] > self.depth[y] {
            x = self.parent[x].unwrap();
        }
        while self.depth[y] > self.depth[x] {
            y = self.parent[y].unwrap();
        }
        while x != y {
            x = self.parent[x].unwrap();
            y = self.parent[y].unwrap();
        }
        x
    }

    pub fn is_ancestor_of(&self, a: NodeId, x: NodeId) -> bool {
        self.lca(a, x) == a
    }

    /// The set `{ lca(x, y) : x, y in z }`; contains `z` itself and is
    /// idempotent.
    pub fn lca_closure(&self, z: &VertexSet) -> VertexSet {
        let items: Vec<NodeId> = z.iter().collect();
        let mut out = Vec::new();
        for (i, &x) in items.iter().enumerate() {
            out.push(x);
            for &y in &items[i + 1..] {
                out.push(self.lca(x, y));
            }
        }
        VertexSet::from_unsorted(out)
    }

    /// The node and all its descendants.
    pub fn subtree_nodes(&self, x: NodeId) -> VertexSet {
        let mut stack = vec![x];
        let mut out = Vec::new();
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children(v));
        }
        VertexSet::from_unsorted(out)
    }

    /// Connected components of `T - removed`, each with its neighbor set
    /// inside `removed`. Components are listed by their smallest node.
    pub fn components_without(&self, removed: &VertexSet) -> Vec<(Subtree, VertexSet)> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || removed.contains(start) {
                continue;
            }
            let mut nodes = Vec::new();
            let mut boundary = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                nodes.push(v);
                let around = self.parent[v].into_iter().chain(self.children(v));
                for w in around {
                    if removed.contains(w) {
                        boundary.push(w);
                    } else if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push((
                Subtree::from_nodes(VertexSet::from_unsorted(nodes)),
                VertexSet::from_unsorted(boundary),
            ));
        }
        out
    }

    /// Everything outside the subtree of `x`; empty when `x` is the root.
    fn above(&self, x: NodeId) -> VertexSet {
        self.all_nodes().difference(&self.subtree_nodes(x))
    }

    /// The component of `T - {a, b}` adjacent to both removed nodes, if
    /// exactly one exists. Single flood fill; no other components are
    /// materialized.
    fn unique_component_between(&self, a: NodeId, b: NodeId) -> Option<Subtree> {
        let mut seen = vec![false; self.len()];
        seen[a] = true;
        seen[b] = true;
        let mut found: Option<Vec<NodeId>> = None;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            seen[start] = true;
            let mut nodes = Vec::new();
            let (mut hits_a, mut hits_b) = (false, false);
            while let Some(v) = stack.pop() {
                nodes.push(v);
                let around = self.parent[v].into_iter().chain(self.children(v));
                for w in around {
                    if w == a {
                        hits_a = true;
                    } else if w == b {
                        hits_b = true;
                    } else if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            if hits_a && hits_b {
                if found.is_some() {
                    return None;
                }
                found = Some(nodes);
            }
        }
        found.map(|nodes| Subtree::from_nodes(VertexSet::from_unsorted(nodes)))
    }

    /// Decodes a three-entry code into a subtree. Total and deterministic;
    /// patterns carrying no valid encoding map to the whole tree.
    ///
    /// The cases, dispatched on the blank pattern:
    /// - `(z1, z2, z3)`: with `y1 = lca(z1,z2)` and `y2 = lca(z1,z3) =
    ///   lca(z2,z3)` distinct, the unique component of `T - {y1, y2}` with
    ///   both as neighbors, if there is exactly one.
    /// - `(z1, z2, _)`: the single node `lca(z1, z2)`.
    /// - `(_, z1, z2)`: the root's component of `T - lca(z1, z2)` when the
    ///   lca is not the root.
    /// - `(z1, _, _)`: the subtree under the left child of `z1`, if any.
    /// - `(_, _, z1)`: the subtree under the right child of `z1`, if any.
    /// - anything else: the whole tree.
    pub fn decode_subtree(&self, code: [Option<NodeId>; 3]) -> Subtree {
        let whole = || Subtree::from_nodes(self.all_nodes());
        match code {
            [Some(z1), Some(z2), Some(z3)] => {
                let y1 = self.lca(z1, z2);
                let y2 = self.lca(z1, z3);
                if self.lca(z2, z3) != y2 || y1 == y2 {
                    return whole();
                }
                match self.unique_component_between(y1, y2) {
                    Some(c) => c,
                    None => whole(),
                }
            }
            [Some(z1), Some(z2), None] => Subtree::single(self.lca(z1, z2)),
            [None, Some(z1), Some(z2)] => {
                let y = self.lca(z1, z2);
                if y == self.root {
                    whole()
                } else {
                    Subtree::from_nodes(self.above(y))
                }
            }
            [Some(z1), None, None] => match self.left(z1) {
                Some(c) => Subtree::from_nodes(self.subtree_nodes(c)),
                None => whole(),
            },
            [None, None, Some(z1)] => match self.right(z1) {
                Some(c) => Subtree::from_nodes(self.subtree_nodes(c)),
                None => whole(),
            },
            _ => whole(),
        }
    }

    /// Finds a code over `pool ∪ {blank}` that decodes to `target`.
    ///
    /// `target` must be a component of `T - lca_closure(pool)` or a single
    /// node of the closure; anything else is a contract violation. The
    /// constructive search follows the case analysis behind
    /// [`decode_subtree`], with a brute-force scan over all codes as a
    /// safety net (lexicographically least, blank before nodes).
    pub fn encode_subtree(&self, pool: &VertexSet, target: &Subtree) -> Result<[Option<NodeId>; 3]> {
        if let Some(code) = self.encode_constructive(pool, target) {
            if &self.decode_subtree(code) == target {
                return Ok(code);
            }
        }
        let mut options = vec![None];
        options.extend(pool.iter().map(Some));
        for &a in &options {
            for &b in &options {
                for &c in &options {
                    if &self.decode_subtree([a, b, c]) == target {
                        return Ok([a, b, c]);
                    }
                }
            }
        }
        Err(Error::Contract(format!(
            "subtree {:?} has no code over the given pool",
            target.nodes().as_slice()
        )))
    }

    fn encode_constructive(
        &self,
        pool: &VertexSet,
        target: &Subtree,
    ) -> Option<[Option<NodeId>; 3]> {
        if target.nodes().len() == self.len() {
            return Some([None, None, None]);
        }
        if let Some(y) = target.single_node() {
            let (z1, z2) = self.pair_with_lca(pool, y)?;
            return Some([Some(z1), Some(z2), None]);
        }
        let mut boundary: Vec<NodeId> = target
            .nodes()
            .iter()
            .flat_map(|v| self.parent(v).into_iter().chain(self.children(v)))
            .filter(|&w| !target.contains(w))
            .collect();
        boundary.sort_unstable();
        boundary.dedup();
        match boundary.as_slice() {
            [] => None,
            &[z] => {
                if target.contains(self.root) {
                    let (z1, z2) = self.pair_with_lca(pool, z)?;
                    Some([None, Some(z1), Some(z2)])
                } else if self.left(z).is_some_and(|c| target.contains(c)) {
                    pool.contains(z).then_some([Some(z), None, None])
                } else if self.right(z).is_some_and(|c| target.contains(c)) {
                    pool.contains(z).then_some([None, None, Some(z)])
                } else {
                    None
                }
            }
            &[a, b] => {
                // The two boundary nodes are comparable; the deeper one is
                // reached as lca(z1, z2), the shallower as the lca with z3.
                let (y1, y2) = if self.depth(a) >= self.depth(b) {
                    (a, b)
                } else {
                    (b, a)
                };
                let (z1, z2) = self.pair_with_lca(pool, y1)?;
                let z3 = pool
                    .iter()
                    .find(|&z| self.lca(z1, z) == y2 && self.lca(z2, z) == y2)?;
                Some([Some(z1), Some(z2), Some(z3)])
            }
            _ => None,
        }
    }

    /// A pair of pool nodes (repetition allowed) whose lca is `y`: the
    /// trivial pair `(y, y)` when `y` is itself in the pool, otherwise the
    /// lexicographically least.
    fn pair_with_lca(&self, pool: &VertexSet, y: NodeId) -> Option<(NodeId, NodeId)> {
        if pool.contains(y) {
            return Some((y, y));
        }
        for z1 in pool.iter() {
            for z2 in pool.iter() {
                if z2 < z1 {
                    continue;
                }
                if self.lca(z1, z2) == y {
                    return Some((z1, z2));
                }
            }
        }
        None
    }
}

/// A connected set of tree nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subtree {
    nodes: VertexSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubtreeKind {
    WholeTree,
    SingleNode,
    Component,
}

impl Subtree {
    pub fn from_nodes(nodes: VertexSet) -> Self {
        Subtree { nodes }
    }

    pub fn single(node: NodeId) -> Self {
        Subtree {
            nodes: VertexSet::from_unsorted(vec![node]),
        }
    }

    pub fn nodes(&self) -> &VertexSet {
        &self.nodes
    }

    pub fn contains(&self, x: NodeId) -> bool {
        self.nodes.contains(x)
    }

    pub fn single_node(&self) -> Option<NodeId> {
        (self.nodes.len() == 1).then(|| self.nodes.first().unwrap())
    }

    pub fn kind(&self, tree: &RootedBinaryTree) -> SubtreeKind {
        if self.nodes.len() == tree.len() {
            SubtreeKind::WholeTree
        } else if self.nodes.len() == 1 {
            SubtreeKind::SingleNode
        } else {
            SubtreeKind::Component
        }
    }
}

/// The encoding targets carved out of `tree` by `pool`: every component of
/// `T - lca_closure(pool)` plus every single closure node.
pub fn closure_targets(tree: &RootedBinaryTree, pool: &VertexSet) -> Vec<Subtree> {
    let closure = tree.lca_closure(pool);
    let mut targets: Vec<Subtree> = tree
        .components_without(&closure)
        .into_iter()
        .map(|(c, _)| c)
        .collect();
    targets.extend(closure.iter().map(Subtree::single));
    targets
}

#[cfg(test)]
pub(crate) fn random_tree(n: usize, rng: &mut crate::generate::SplitMix64) -> RootedBinaryTree {
    let mut left = vec![None; n];
    let mut right = vec![None; n];
    for x in 1..n {
        loop {
            let p = rng.next_below(x as u64) as usize;
            let side = rng.next_below(2) == 0;
            let slot = if side { &mut left[p] } else { &mut right[p] };
            if slot.is_none() {
                *slot = Some(x);
                break;
            }
        }
    }
    RootedBinaryTree::new(0, left, right).unwrap()
}
