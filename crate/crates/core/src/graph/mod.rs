//! Graph representations and constructions.
//!
//! [`SimpleGraph`] is the object being classified: undirected, loop-free, at
//! most [`MAX_VERTICES`] vertices, one `u16` adjacency row per vertex.
//! [`LoopedGraph`] additionally allows loops and is used for product patterns
//! such as `K_r°`. [`WeightedGraph`] carries exact rational edge weights and
//! plays the role of the target in homomorphism counts.

mod canon;
mod enumerate;
mod graph6;
mod ops;
mod weighted;

use std::fmt;

use crate::error::{Error, Result};

pub use canon::{canonical_form, canonical_graph, CanonicalForm};
pub use enumerate::{
    enumerate_graphs, enumerate_trees, extend_by_vertex, MAX_SWEEP_VERTICES,
};
pub use graph6::{parse_graph6, read_graph6_file, write_graph6, write_graph6_file};
pub use ops::{
    blow_up, component_vertex_sets, components, disjoint_union, induced_subgraph,
    odd_multiplicity_components, odd_multiplicity_reduction, power,
};
pub use weighted::WeightedGraph;

/// Largest vertex count supported by the bitset representation.
pub const MAX_VERTICES: usize = 16;

/// Iterates over the indices of the set bits of `mask`, lowest first.
pub fn bits(mut mask: u16) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Bitmask with the given vertices set.
pub fn mask_of(vertices: &[usize]) -> u16 {
    vertices.iter().fold(0u16, |m, &v| m | (1 << v))
}

/// Undirected loop-free graph on `1..=16` vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    n: u8,
    adj: [u16; MAX_VERTICES],
}

impl SimpleGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("a graph needs at least one vertex".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::too_large("vertex count", n as u128, MAX_VERTICES as u128));
        }
        Ok(SimpleGraph {
            n: n as u8,
            adj: [0; MAX_VERTICES],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument("a cycle needs at least 3 vertices".into()));
        }
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    /// The star `K_{1,k}` with center 0.
    pub fn star(k: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=k).map(|v| (0, v)).collect();
        Self::from_edges(k + 1, &edges)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        let mut edges = Vec::with_capacity(a * b);
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        Self::from_edges(a + b, &edges)
    }

    /// Builds a graph from full adjacency rows. Rows must be symmetric and loop-free.
    pub fn from_rows(rows: &[u16]) -> Result<Self> {
        let mut g = Self::empty(rows.len())?;
        let n = rows.len();
        let full = if n == 16 { u16::MAX } else { (1u16 << n) - 1 };
        for (u, &row) in rows.iter().enumerate() {
            if row & !full != 0 || row & (1 << u) != 0 {
                return Err(Error::InvalidArgument(format!("bad adjacency row {u}")));
            }
            g.adj[u] = row;
        }
        for u in 0..n {
            for v in bits(g.adj[u]) {
                if g.adj[v] & (1 << u) == 0 {
                    return Err(Error::InvalidArgument("adjacency is not symmetric".into()));
                }
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Mask of all vertices.
    #[inline]
    pub fn vertex_mask(&self) -> u16 {
        if self.n as usize == MAX_VERTICES {
            u16::MAX
        } else {
            (1u16 << self.n) - 1
        }
    }

    /// Adds the edge `uv`. Panics on a loop.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "SimpleGraph cannot hold loops");
        debug_assert!(u < self.n() && v < self.n());
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & (1 << v) != 0
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> u16 {
        self.adj[u]
    }

    pub fn rows(&self) -> &[u16] {
        &self.adj[..self.n()]
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|u| self.degree(u)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for v in bits(self.adj[u] & !((2u32 << u) - 1) as u16) {
                out.push((u, v));
            }
        }
        out
    }

    /// Number of edges with both ends in `mask`.
    pub fn edges_within(&self, mask: u16) -> usize {
        bits(mask)
            .map(|u| (self.adj[u] & mask).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Number of edges with one end in `a` and the other in `b` (disjoint masks).
    pub fn edges_between(&self, a: u16, b: u16) -> usize {
        bits(a).map(|u| (self.adj[u] & b).count_ones() as usize).sum()
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> SimpleGraph {
        assert_eq!(perm.len(), self.n());
        let mut out = SimpleGraph {
            n: self.n,
            adj: [0; MAX_VERTICES],
        };
        for u in 0..self.n() {
            for v in bits(self.adj[u]) {
                out.adj[perm[u]] |= 1 << perm[v];
            }
        }
        out
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: u16) -> u16 {
        let mut seen = 1u16 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u16;
            for u in bits(frontier) {
                next |= self.adj[u] & within;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.reach(0, self.vertex_mask()) == self.vertex_mask()
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.n() && self.is_connected()
    }

    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        perm.len() == self.n() && self.permuted(perm) == *self
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph({})", write_graph6(self))
    }
}

impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_graph6(self))
    }
}

/// Undirected graph where loops are allowed, e.g. the pattern `K_r°`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct LoopedGraph {
    n: u8,
    adj: [u16; MAX_VERTICES],
}

impl LoopedGraph {
    pub fn empty(n: usize) -> Result<Self> {
        let g = SimpleGraph::empty(n)?;
        Ok(LoopedGraph { n: g.n, adj: g.adj })
    }

    /// `K_r°`: complete graph with a loop on every vertex.
    pub fn complete_looped(r: usize) -> Result<Self> {
        let mut g = Self::empty(r)?;
        let full = SimpleGraph::empty(r)?.vertex_mask();
        for u in 0..r {
            g.adj[u] = full;
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & (1 << v) != 0
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n()).any(|u| self.has_edge(u, u))
    }

    /// Unordered edges `(u, v)` with `u <= v`; loops appear once.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in bits(self.adj[u] >> u << u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Categorical product; vertex `(i1, i2)` is numbered `i1 * other.n() + i2`.
    pub fn categorical_product(&self, other: &LoopedGraph) -> Result<LoopedGraph> {
        let (n1, n2) = (self.n(), other.n());
        let n = n1 * n2;
        if n > MAX_VERTICES {
            return Err(Error::too_large("product vertex count", n as u128, MAX_VERTICES as u128));
        }
        let mut g = Self::empty(n)?;
        for i1 in 0..n1 {
            for i2 in 0..n2 {
                for j1 in bits(self.adj[i1]) {
                    for j2 in bits(other.adj[i2]) {
                        g.adj[i1 * n2 + i2] |= 1 << (j1 * n2 + j2);
                    }
                }
            }
        }
        Ok(g)
    }
}

impl From<&SimpleGraph> for LoopedGraph {
    fn from(g: &SimpleGraph) -> Self {
        LoopedGraph { n: g.n, adj: g.adj }
    }
}

impl TryFrom<&LoopedGraph> for SimpleGraph {
    type Error = Error;

    fn try_from(g: &LoopedGraph) -> Result<Self> {
        if g.has_loops() {
            return Err(Error::InvalidArgument("graph has loops".into()));
        }
        Ok(SimpleGraph { n: g.n, adj: g.adj })
    }
}

impl fmt::Debug for LoopedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LoopedGraph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Categorical product of two simple graphs (always loop-free).
pub fn categorical_product(g1: &SimpleGraph, g2: &SimpleGraph) -> Result<SimpleGraph> {
    let p = LoopedGraph::from(g1).categorical_product(&LoopedGraph::from(g2))?;
    SimpleGraph::try_from(&p)
}
