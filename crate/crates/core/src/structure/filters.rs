use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::partition::VertexPartition;
use super::symmetry::is_symmetric;
use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, SimpleGraph, WeightedGraph};
use crate::hom::hom_count;

/// Largest class count accepted by [`subgraph_minimality_filter`].
pub const MINIMALITY_MAX_CLASSES: usize = 12;

/// A single looped vertex of weight −1 and the (negative) count it gives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddEdgeWitness {
    pub target: WeightedGraph,
    pub hom: BigRational,
}

/// Fails exactly when `|E(g)|` is odd, returning the −1 loop witness.
pub fn edge_parity_filter(g: &SimpleGraph) -> Option<OddEdgeWitness> {
    if g.edge_count().is_multiple_of(2) {
        return None;
    }
    let target = WeightedGraph::single_loop(BigRational::from_integer((-1).into()));
    let hom = hom_count(g, &target).expect("one-vertex target is always within budget");
    Some(OddEdgeWitness { target, hom })
}

/// Smallest odd degree held by an odd number of vertices, if any.
pub fn degree_parity_filter(g: &SimpleGraph) -> Option<usize> {
    let mut count = vec![0usize; g.n()];
    for d in g.degrees() {
        count[d] += 1;
    }
    (1..g.n()).step_by(2).find(|&d| count[d] % 2 == 1)
}

/// Induced subgraph on the vertices of degree `k`.
pub fn degree_subgraph(g: &SimpleGraph, k: usize) -> Result<SimpleGraph> {
    let vs: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == k).collect();
    if vs.is_empty() {
        return Err(Error::InvalidArgument(format!("no vertex has degree {k}")));
    }
    induced_subgraph(g, &vs)
}

/// One or two classes whose union spans an odd number of edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassParityFailure {
    /// The class, or the pair of classes with an odd crossing count.
    pub classes: Vec<usize>,
    /// Vertices of the union of those classes.
    pub vertices: Vec<usize>,
    /// Edges counted by the failing check (inside or across).
    pub edges: usize,
}

/// Checks that every class spans an even number of edges and every pair
/// of classes has an even number of edges between them.
pub fn wl_class_parity_check(g: &SimpleGraph, p: &VertexPartition) -> Option<ClassParityFailure> {
    let masks = p.class_masks();
    let members = |m: u16| (0..g.n()).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>();
    for (c, &m) in masks.iter().enumerate() {
        let e = g.edges_within(m);
        if e % 2 == 1 {
            return Some(ClassParityFailure {
                classes: vec![c],
                vertices: members(m),
                edges: e,
            });
        }
    }
    for c in 0..masks.len() {
        for d in c + 1..masks.len() {
            let e = g.edges_between(masks[c], masks[d]);
            if e % 2 == 1 {
                // both classes span even counts here, so the union is odd
                return Some(ClassParityFailure {
                    classes: vec![c, d],
                    vertices: members(masks[c] | masks[d]),
                    edges: e,
                });
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinimalityVerdict {
    /// The union of these classes spans a non-symmetric subgraph.
    NotMinimal { classes: Vec<usize>, vertices: Vec<usize> },
    Inconclusive,
}

/// Tries proper nonempty subsets of classes in order of increasing size and
/// reports the first whose union spans a non-symmetric induced subgraph.
pub fn subgraph_minimality_filter(g: &SimpleGraph, p: &VertexPartition) -> Result<MinimalityVerdict> {
    let k = p.num_classes();
    if k > MINIMALITY_MAX_CLASSES {
        return Err(Error::too_large("class count", k as u128, MINIMALITY_MAX_CLASSES as u128));
    }
    let masks = p.class_masks();
    let mut subsets: Vec<u32> = (1..(1u32 << k) - 1).collect();
    subsets.sort_by_key(|&s| (s.count_ones(), (0..k).filter(|&c| s >> c & 1 == 1).collect::<Vec<_>>()));
    for s in subsets {
        let classes: Vec<usize> = (0..k).filter(|&c| s >> c & 1 == 1).collect();
        let mask = classes.iter().fold(0u16, |m, &c| m | masks[c]);
        let vertices: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
        let sub = induced_subgraph(g, &vertices)?;
        if is_symmetric(&sub).is_none() {
            return Ok(MinimalityVerdict::NotMinimal { classes, vertices });
        }
    }
    Ok(MinimalityVerdict::Inconclusive)
}
