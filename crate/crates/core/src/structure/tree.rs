use serde::{Deserialize, Serialize};

use super::filters::ClassParityFailure;
use super::partition::{wl_partition, VertexPartition};
use super::symmetry::SymmetryWitness;
use crate::error::{Error, Result};
use crate::graph::{bits, SimpleGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TreeVerdict {
    Symmetric(SymmetryWitness),
    /// Classes of the walk-tree partition spanning an odd number of edges.
    Nonpositive(ClassParityFailure),
}

/// Vertices whose removal leaves components of at most `n / 2` vertices.
pub fn tree_centroids(t: &SimpleGraph) -> Vec<usize> {
    let n = t.n();
    (0..n)
        .filter(|&v| {
            let rest = t.vertex_mask() & !(1 << v);
            bits(t.neighbors(v)).all(|u| 2 * t.reach(u, rest).count_ones() as usize <= n)
        })
        .collect()
}

fn subtree_code(t: &SimpleGraph, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = bits(t.neighbors(v))
        .filter(|&u| u != parent)
        .map(|u| subtree_code(t, u, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Extends `map` with an isomorphism of the subtree at `x` onto the one at
/// `y` (both hanging away from their parents).
fn map_subtree(t: &SimpleGraph, x: usize, px: usize, y: usize, py: usize, map: &mut Vec<(usize, usize)>) {
    map.push((x, y));
    let sorted = |v: usize, p: usize| {
        let mut kids: Vec<(String, usize)> = bits(t.neighbors(v))
            .filter(|&u| u != p)
            .map(|u| (subtree_code(t, u, v), u))
            .collect();
        kids.sort();
        kids
    };
    let (kx, ky) = (sorted(x, px), sorted(y, py));
    for ((cx, ux), (cy, uy)) in kx.into_iter().zip(ky) {
        debug_assert_eq!(cx, cy);
        map_subtree(t, ux, x, uy, y, map);
    }
}

fn failure(t: &SimpleGraph, p: &VertexPartition, mut classes: Vec<usize>) -> ClassParityFailure {
    classes.sort_unstable();
    classes.dedup();
    let mask = p.union_mask(&classes);
    let edges = if classes.len() == 1 {
        t.edges_within(mask)
    } else {
        t.edges_between(p.class_mask(classes[0]), p.class_mask(classes[1]))
    };
    ClassParityFailure {
        classes,
        vertices: bits(mask).collect(),
        edges,
    }
}

/// Decides a tree by the central-vertex case analysis: two central vertices
/// span a single edge; otherwise the tree is symmetric exactly when every
/// walk-tree class of neighbours of the centre has even size.
pub fn classify_tree(t: &SimpleGraph) -> Result<TreeVerdict> {
    if !t.is_tree() {
        return Err(Error::InvalidArgument(format!("{t} is not a tree")));
    }
    let p = wl_partition(t);
    let centroids = tree_centroids(t);
    if let [c1, c2] = centroids[..] {
        return Ok(TreeVerdict::Nonpositive(failure(t, &p, vec![p.class_of(c1), p.class_of(c2)])));
    }
    let c = centroids[0];
    let nbrs: Vec<usize> = bits(t.neighbors(c)).collect();
    let mut kinds: Vec<usize> = nbrs.iter().map(|&u| p.class_of(u)).collect();
    kinds.sort_unstable();
    kinds.dedup();
    for &k in &kinds {
        if nbrs.iter().filter(|&&u| p.class_of(u) == k).count() % 2 == 1 {
            return Ok(TreeVerdict::Nonpositive(failure(t, &p, vec![p.class_of(c), k])));
        }
    }
    let n = t.n();
    let mut sigma: Vec<usize> = (0..n).collect();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for &k in &kinds {
        let group: Vec<usize> = nbrs.iter().copied().filter(|&u| p.class_of(u) == k).collect();
        for pair in group.chunks(2) {
            let mut map = Vec::new();
            map_subtree(t, pair[0], c, pair[1], c, &mut map);
            for (x, y) in map {
                sigma[x] = y;
                sigma[y] = x;
                a.push(x);
                b.push(y);
            }
        }
    }
    a.sort_unstable();
    b.sort_unstable();
    let w = SymmetryWitness {
        s: vec![c],
        a,
        b,
        sigma,
    };
    w.verify(t)?;
    Ok(TreeVerdict::Symmetric(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_trees;
    use crate::structure::{is_symmetric, wl_class_parity_check};

    #[test]
    fn small_trees() {
        assert!(matches!(classify_tree(&SimpleGraph::path(3).unwrap()).unwrap(), TreeVerdict::Symmetric(_)));
        match classify_tree(&SimpleGraph::complete(2).unwrap()).unwrap() {
            TreeVerdict::Nonpositive(f) => assert_eq!(f.edges, 1),
            v => panic!("{v:?}"),
        }
        match classify_tree(&SimpleGraph::star(3).unwrap()).unwrap() {
            TreeVerdict::Nonpositive(f) => assert_eq!(f.edges, 3),
            v => panic!("{v:?}"),
        }
        assert!(classify_tree(&SimpleGraph::cycle(4).unwrap()).is_err());
    }

    #[test]
    fn centroids() {
        assert_eq!(tree_centroids(&SimpleGraph::path(4).unwrap()), vec![1, 2]);
        assert_eq!(tree_centroids(&SimpleGraph::path(5).unwrap()), vec![2]);
        assert_eq!(tree_centroids(&SimpleGraph::star(4).unwrap()), vec![0]);
    }

    #[test]
    fn agrees_with_symmetry_and_class_parity() {
        for n in 1..=10 {
            for t in enumerate_trees(n).unwrap() {
                let v = classify_tree(&t).unwrap();
                let sym = is_symmetric(&t).is_some();
                let parity_fails = wl_class_parity_check(&t, &wl_partition(&t)).is_some();
                match v {
                    TreeVerdict::Symmetric(_) => assert!(sym && !parity_fails, "{t}"),
                    TreeVerdict::Nonpositive(f) => {
                        assert!(!sym && parity_fails, "{t}");
                        assert_eq!(f.edges % 2, 1);
                    }
                }
            }
        }
    }
}
