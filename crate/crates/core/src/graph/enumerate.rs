//! Small-graph enumeration.
//!
//! Up to [`MAX_SWEEP_VERTICES`] vertices every labeled adjacency matrix is
//! visited and deduplicated by canonical code. Larger orders are produced by
//! [`extend_by_vertex`], which is how the shipped graph6 fixtures are built.

use std::collections::HashSet;

use rayon::prelude::*;

use super::canon::canonical_code;
use super::{canonical_graph, SimpleGraph};
use crate::error::{Error, Result};

pub const MAX_SWEEP_VERTICES: usize = 7;

fn graph_from_code(n: usize, code: u128) -> SimpleGraph {
    let nbits = n * (n - 1) / 2;
    let mut g = SimpleGraph::empty(n).expect("n checked by caller");
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> (nbits - 1 - k) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    g
}

fn sorted_unique(mut codes: Vec<u128>) -> Vec<u128> {
    codes.par_sort_unstable();
    codes.dedup();
    codes
}

/// One canonical representative per isomorphism class on `n` vertices,
/// ordered by canonical graph6 string.
pub fn enumerate_graphs(n: usize) -> Result<Vec<SimpleGraph>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if n > MAX_SWEEP_VERTICES {
        return Err(Error::too_large(
            "exhaustive enumeration order (use fixture files)",
            n as u128,
            MAX_SWEEP_VERTICES as u128,
        ));
    }
    let slots: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let total = 1u64 << slots.len();
    let codes: Vec<u128> = (0..total)
        .into_par_iter()
        .fold(HashSet::new, |mut acc, mask| {
            let mut g = SimpleGraph::empty(n).expect("n checked");
            for (b, &(i, j)) in slots.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    g.add_edge(i, j);
                }
            }
            acc.insert(canonical_code(&g));
            acc
        })
        .flat_map_iter(|s| s.into_iter())
        .collect();
    Ok(sorted_unique(codes)
        .into_iter()
        .map(|c| graph_from_code(n, c))
        .collect())
}

/// All graphs on `n + 1` vertices, given all graphs on `n` vertices: every
/// graph on `n + 1` vertices arises from one on `n` by adding a vertex.
pub fn extend_by_vertex(graphs: &[SimpleGraph]) -> Result<Vec<SimpleGraph>> {
    let Some(first) = graphs.first() else {
        return Ok(Vec::new());
    };
    let n = first.n();
    if graphs.iter().any(|g| g.n() != n) {
        return Err(Error::InvalidArgument("mixed vertex counts".into()));
    }
    SimpleGraph::empty(n + 1)?;
    let codes: Vec<u128> = graphs
        .par_iter()
        .flat_map_iter(|g| {
            let mut local = HashSet::new();
            for subset in 0u32..(1 << n) {
                let mut h = SimpleGraph::empty(n + 1).expect("checked");
                for (u, v) in g.edges() {
                    h.add_edge(u, v);
                }
                for v in 0..n {
                    if subset >> v & 1 == 1 {
                        h.add_edge(v, n);
                    }
                }
                local.insert(canonical_code(&h));
            }
            local.into_iter()
        })
        .collect();
    Ok(sorted_unique(codes)
        .into_iter()
        .map(|c| graph_from_code(n + 1, c))
        .collect())
}

/// Nonisomorphic trees on `n` vertices, by leaf addition.
pub fn enumerate_trees(n: usize) -> Result<Vec<SimpleGraph>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    SimpleGraph::empty(n)?;
    let mut level = vec![SimpleGraph::empty(1)?];
    for m in 1..n {
        let mut next: Vec<SimpleGraph> = Vec::new();
        let mut seen = HashSet::new();
        for t in &level {
            for v in 0..m {
                let mut h = SimpleGraph::empty(m + 1)?;
                for (a, b) in t.edges() {
                    h.add_edge(a, b);
                }
                h.add_edge(v, m);
                let c = canonical_graph(&h);
                if seen.insert(c) {
                    next.push(c);
                }
            }
        }
        next.sort_by_cached_key(super::write_graph6);
        level = next;
    }
    Ok(level)
}
