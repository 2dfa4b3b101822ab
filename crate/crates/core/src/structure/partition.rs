use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::graph::{bits, SimpleGraph};

/// Class index per vertex, classes numbered `0..k` by first vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexPartition {
    classes: Vec<usize>,
    k: usize,
}

impl VertexPartition {
    /// Normalises arbitrary labels to first-occurrence numbering.
    pub fn from_labels<T: Eq + std::hash::Hash + Clone>(labels: &[T]) -> Self {
        let mut ids: HashMap<T, usize> = HashMap::new();
        let classes: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l.clone()).or_insert(next)
            })
            .collect();
        VertexPartition { k: ids.len(), classes }
    }

    pub fn single_class(n: usize) -> Self {
        VertexPartition {
            classes: vec![0; n],
            k: usize::from(n > 0),
        }
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.classes[v]
    }

    pub fn num_classes(&self) -> usize {
        self.k
    }

    pub fn class_mask(&self, c: usize) -> u16 {
        self.classes
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x == c)
            .fold(0, |m, (v, _)| m | 1 << v)
    }

    pub fn class_masks(&self) -> Vec<u16> {
        (0..self.k).map(|c| self.class_mask(c)).collect()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &c in &self.classes {
            sizes[c] += 1;
        }
        sizes
    }

    /// Union of the vertex sets of the given classes.
    pub fn union_mask(&self, classes: &[usize]) -> u16 {
        classes.iter().fold(0, |m, &c| m | self.class_mask(c))
    }

    /// One round of neighbour-class-multiset refinement.
    pub fn refine_once(&self, g: &SimpleGraph) -> Self {
        let sigs: Vec<(usize, Vec<usize>)> = (0..g.n())
            .map(|v| {
                let mut nb: Vec<usize> = bits(g.neighbors(v)).map(|u| self.classes[u]).collect();
                nb.sort_unstable();
                (self.classes[v], nb)
            })
            .collect();
        Self::from_labels(&sigs)
    }

    /// Refines until the class count stops growing.
    pub fn refine_to_stable(&self, g: &SimpleGraph) -> Self {
        let mut p = Self::from_labels(&self.classes);
        loop {
            let next = p.refine_once(g);
            if next.k == p.k {
                return next;
            }
            p = next;
        }
    }
}

/// Coarsest equitable partition reached from the single class by colour
/// refinement (1-dimensional Weisfeiler-Lehman). Two vertices share a class
/// exactly when their walk-trees are isomorphic.
pub fn wl_partition(g: &SimpleGraph) -> VertexPartition {
    VertexPartition::single_class(g.n()).refine_to_stable(g)
}
