//! Weitz's tree of self-avoiding walks and spatial-mixing influences.
//!
//! Children of a node are the neighbors of its vertex other than the one it
//! was entered from, in ascending index order. A step onto a vertex already
//! on the walk ends in a clamped leaf. For the cycle through `w` that leaves
//! `w` towards `a` and returns to `w` from `b`, the leaf is `+` when `b < a`
//! and `-` otherwise.

mod spatial;
mod tree;

pub use spatial::{exact_a_u, spatial_bound_a_u, ExtremalMode, SpatialMixingCert};
pub use spatial::spatial_bound_a_u_capped;
pub use spatial::exact_a_u_capped;
pub use tree::{build_saw_tree, build_saw_tree_capped, saw_marginal, saw_marginal_capped, NodeKind, SawNode, SawTree, DEFAULT_NODE_CAP};
