use std::collections::BTreeMap;

use super::canon::canonical_code;
use super::{bits, canonical_graph, SimpleGraph, MAX_VERTICES};
use crate::error::{Error, Result};

/// Disjoint union; vertices of `g2` follow those of `g1`.
pub fn disjoint_union(g1: &SimpleGraph, g2: &SimpleGraph) -> Result<SimpleGraph> {
    let n = g1.n() + g2.n();
    if n > MAX_VERTICES {
        return Err(Error::too_large("disjoint union vertex count", n as u128, MAX_VERTICES as u128));
    }
    let mut g = SimpleGraph::empty(n)?;
    for (u, v) in g1.edges() {
        g.add_edge(u, v);
    }
    let off = g1.n();
    for (u, v) in g2.edges() {
        g.add_edge(u + off, v + off);
    }
    Ok(g)
}

/// `G^k`: disjoint union of `k` copies.
pub fn power(g: &SimpleGraph, k: usize) -> Result<SimpleGraph> {
    if k == 0 {
        return Err(Error::InvalidArgument("power needs k >= 1".into()));
    }
    let mut out = *g;
    for _ in 1..k {
        out = disjoint_union(&out, g)?;
    }
    Ok(out)
}

/// `G(r)`: every vertex replaced by `r` pairwise non-adjacent twins.
/// Twin `t` of vertex `v` is numbered `t * n + v`, matching `K_r° × G`.
pub fn blow_up(g: &SimpleGraph, r: usize) -> Result<SimpleGraph> {
    if r == 0 {
        return Err(Error::InvalidArgument("blow-up factor must be positive".into()));
    }
    let n = g.n();
    if r * n > MAX_VERTICES {
        return Err(Error::too_large("blow-up vertex count", (r * n) as u128, MAX_VERTICES as u128));
    }
    let mut out = SimpleGraph::empty(r * n)?;
    for (u, v) in g.edges() {
        for a in 0..r {
            for b in 0..r {
                out.add_edge(a * n + u, b * n + v);
            }
        }
    }
    Ok(out)
}

/// Vertex sets of the connected components, ordered by smallest vertex.
pub fn component_vertex_sets(g: &SimpleGraph) -> Vec<u16> {
    let mut left = g.vertex_mask();
    let mut out = Vec::new();
    while left != 0 {
        let start = left.trailing_zeros() as usize;
        let comp = g.reach(start, g.vertex_mask());
        out.push(comp);
        left &= !comp;
    }
    out
}

pub fn components(g: &SimpleGraph) -> Vec<SimpleGraph> {
    component_vertex_sets(g)
        .into_iter()
        .map(|m| induced_by_mask(g, m))
        .collect()
}

/// For every isomorphism class of components occurring an odd number of
/// times, the vertex set of its first occurrence. Ordered by smallest vertex.
pub fn odd_multiplicity_components(g: &SimpleGraph) -> Vec<u16> {
    let mut classes: BTreeMap<(usize, u128), (usize, u16)> = BTreeMap::new();
    for m in component_vertex_sets(g) {
        let key = (m.count_ones() as usize, canonical_code(&induced_by_mask(g, m)));
        let entry = classes.entry(key).or_insert((0, m));
        entry.0 += 1;
    }
    let mut out: Vec<u16> = classes
        .into_values()
        .filter(|&(count, _)| count % 2 == 1)
        .map(|(_, m)| m)
        .collect();
    out.sort_by_key(|m| m.trailing_zeros());
    out
}

/// Canonical representatives of the components occurring an odd number of
/// times, sorted by (vertex count, graph6).
pub fn odd_multiplicity_reduction(g: &SimpleGraph) -> Vec<SimpleGraph> {
    let mut out: Vec<SimpleGraph> = odd_multiplicity_components(g)
        .into_iter()
        .map(|m| canonical_graph(&induced_by_mask(g, m)))
        .collect();
    out.sort_by_cached_key(|h| (h.n(), super::write_graph6(h)));
    out
}

pub(crate) fn induced_by_mask(g: &SimpleGraph, mask: u16) -> SimpleGraph {
    let verts: Vec<usize> = bits(mask).collect();
    let mut pos = [usize::MAX; MAX_VERTICES];
    for (i, &v) in verts.iter().enumerate() {
        pos[v] = i;
    }
    let mut out = SimpleGraph::empty(verts.len()).expect("nonempty mask");
    for (i, &v) in verts.iter().enumerate() {
        for u in bits(g.neighbors(v) & mask) {
            if pos[u] > i {
                out.add_edge(i, pos[u]);
            }
        }
    }
    out
}

/// Subgraph induced by `vertices`, relabeled in increasing vertex order.
pub fn induced_subgraph(g: &SimpleGraph, vertices: &[usize]) -> Result<SimpleGraph> {
    if vertices.is_empty() {
        return Err(Error::InvalidArgument("empty vertex set".into()));
    }
    if let Some(&v) = vertices.iter().find(|&&v| v >= g.n()) {
        return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
    }
    Ok(induced_by_mask(g, super::mask_of(vertices)))
}

/// `K_r° × G` computed through the generic product, for cross-checks.
#[cfg(test)]
pub(crate) fn blow_up_via_product(g: &SimpleGraph, r: usize) -> Result<SimpleGraph> {
    use super::LoopedGraph;
    let p = LoopedGraph::complete_looped(r)?.categorical_product(&LoopedGraph::from(g))?;
    SimpleGraph::try_from(&p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_form;

    fn k(n: usize) -> SimpleGraph {
        SimpleGraph::complete(n).unwrap()
    }

    #[test]
    fn unions_and_powers() {
        let u = disjoint_union(&k(2), &k(2)).unwrap();
        assert_eq!((u.n(), u.edge_count()), (4, 2));
        let p = power(&k(3), 2).unwrap();
        assert_eq!((p.n(), p.edge_count()), (6, 6));
        assert_eq!(power(&k(3), 1).unwrap(), k(3));
        assert!(power(&k(9), 2).is_err());
    }

    #[test]
    fn blow_ups() {
        let b = blow_up(&k(2), 2).unwrap();
        assert_eq!(canonical_graph(&b), canonical_graph(&SimpleGraph::complete_bipartite(2, 2).unwrap()));
        let p3 = SimpleGraph::path(3).unwrap();
        assert_eq!(blow_up(&p3, 1).unwrap(), p3);
        let b3 = blow_up(&p3, 2).unwrap();
        assert_eq!((b3.n(), b3.edge_count()), (6, 8));
        for r in 1..=4 {
            assert_eq!(blow_up(&p3, r).unwrap(), blow_up_via_product(&p3, r).unwrap());
        }
        let c5 = SimpleGraph::cycle(5).unwrap();
        assert_eq!(blow_up(&c5, 3).unwrap(), blow_up_via_product(&c5, 3).unwrap());
        assert!(blow_up(&c5, 4).is_err());
    }

    #[test]
    fn odd_multiplicity() {
        let k3k3 = power(&k(3), 2).unwrap();
        assert!(odd_multiplicity_reduction(&k3k3).is_empty());
        let p3 = SimpleGraph::path(3).unwrap();
        let g = disjoint_union(&k3k3, &p3).unwrap();
        assert_eq!(odd_multiplicity_reduction(&g), vec![canonical_graph(&p3)]);
        let c5 = SimpleGraph::cycle(5).unwrap();
        assert_eq!(odd_multiplicity_reduction(&c5), vec![canonical_graph(&c5)]);
        // three copies keep one
        let g = power(&k(2), 3).unwrap();
        assert_eq!(odd_multiplicity_reduction(&g), vec![k(2)]);
    }

    #[test]
    fn induced() {
        let c5 = SimpleGraph::cycle(5).unwrap();
        let p4 = induced_subgraph(&c5, &[0, 1, 2, 3]).unwrap();
        assert_eq!(canonical_form(&p4).graph6, canonical_form(&SimpleGraph::path(4).unwrap()).graph6);
        assert_eq!(induced_subgraph(&c5, &[0, 1, 2, 3, 4]).unwrap(), c5);
        assert_eq!(induced_subgraph(&c5, &[0, 2]).unwrap().edge_count(), 0);
        assert!(induced_subgraph(&c5, &[]).is_err());
    }

    #[test]
    fn components_of_union() {
        let g = disjoint_union(&k(3), &SimpleGraph::path(3).unwrap()).unwrap();
        let cs = components(&g);
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0], k(3));
    }
}
