//! Proper sample compression schemes for hypergraphs of balls in graphs
//! with structure: bounded treewidth, bounded NLC-width (cliquewidth),
//! bounded vertex cover, bounded local treewidth, and bounded degeneracy.
//!
//! A sample labels some vertices as inside and some as outside an unknown
//! ball. Each scheme compresses any realizable sample into a few of its
//! own vertices (plus, for the labeled schemes, a short bitstring) from
//! which a reconstructor recovers a ball consistent with every label. The
//! brute-force oracles in [`balls`] exist to verify all of that at desk
//! scale: ball enumeration, realization, and exact VC / 2VC dimensions.

pub mod balls;
pub mod codes;
pub mod error;
pub mod ext_int;
pub mod formats;
pub mod generate;
pub mod graph;
pub mod nlc;
pub mod radius;
mod search;
pub mod tree;
pub mod treewidth;
pub mod vertex_cover;

pub use balls::{realizes, BallFamily, Sample};
pub use codes::{array_to_labeled, labeled_to_array, ArrayCode, Bits, LabeledCode};
pub use error::{Error, Result};
pub use ext_int::ExtInt;
pub use graph::{Graph, Vertex, VertexSet};
pub use nlc::{dist_via_twin, NlcDecomposition, NlcScheme};
pub use radius::{degeneracy_order, DegeneracyScheme, LocalTreewidthScheme};
pub use tree::{RootedBinaryTree, Subtree};
pub use treewidth::{
    min_fill_decomposition, radius_bounds, Instance, RawTreeDecomposition, TreeDecomposition,
    TreewidthScheme,
};
pub use vertex_cover::{find_vertex_cover, VertexCoverScheme};
