//! Combinatorial tests: symmetry, parity filters, colour refinement and
//! the tree case analysis.

mod filters;
mod partition;
mod symmetry;
mod tree;

pub use filters::{
    degree_parity_filter, degree_subgraph, edge_parity_filter, subgraph_minimality_filter,
    wl_class_parity_check, ClassParityFailure, MinimalityVerdict, OddEdgeWitness,
    MINIMALITY_MAX_CLASSES,
};
pub use partition::{wl_partition, VertexPartition};
pub use symmetry::{is_symmetric, symmetric_graphs, SymmetryWitness, SYMMETRIC_ENUMERATION_MAX};
pub use tree::{classify_tree, tree_centroids, TreeVerdict};
