//! Exact homomorphism counting into weighted targets.

mod count;
mod elimination;
mod poly;
mod ring;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

pub use count::{
    hom_count, hom_count_brute_force, hom_count_f64, hom_count_with, hom_dp_vs_bruteforce,
    product_law_check, restricted_hom_count, IntegerHomCounter, restricted_hom_count_brute_force, sign, t_density,
    target_power, CountMethod, HomLimits, ProductLawReport, TARGET_POWER_CAP,
};
pub use elimination::EliminationOrder;
pub use poly::{hom_polynomial, CompiledPolynomial, HomPolynomial, POLYNOMIAL_MAP_CAP};
pub use ring::Weight;

/// Allowed target vertices for each vertex of the pattern graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockConstraint {
    allowed: Vec<Vec<usize>>,
}

impl BlockConstraint {
    pub fn new(allowed: Vec<Vec<usize>>) -> Result<Self> {
        let mut allowed = allowed;
        for (v, set) in allowed.iter_mut().enumerate() {
            set.sort_unstable();
            set.dedup();
            if set.is_empty() {
                return Err(Error::InvalidArgument(format!("vertex {v} has no allowed target")));
            }
        }
        Ok(BlockConstraint { allowed })
    }

    /// Class `c` is sent to `block_sizes[c]` consecutive target vertices,
    /// blocks laid out in class order.
    pub fn from_classes(classes: &[usize], block_sizes: &[usize]) -> Result<Self> {
        let mut offsets = Vec::with_capacity(block_sizes.len());
        let mut next = 0;
        for &s in block_sizes {
            offsets.push(next);
            next += s;
        }
        let allowed = classes
            .iter()
            .map(|&c| {
                let size = *block_sizes
                    .get(c)
                    .ok_or_else(|| Error::InvalidArgument(format!("class {c} has no block size")))?;
                Ok((offsets[c]..offsets[c] + size).collect())
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        Self::new(allowed)
    }

    pub fn allowed(&self) -> &[Vec<usize>] {
        &self.allowed
    }

    /// Number of target vertices the constraint refers to.
    pub fn target_size(&self) -> usize {
        self.allowed
            .iter()
            .flat_map(|s| s.iter().copied())
            .max()
            .map_or(0, |x| x + 1)
    }

    pub fn map_count(&self) -> u128 {
        self.allowed
            .iter()
            .map(|s| s.len() as u128)
            .try_fold(1u128, |a, b| a.checked_mul(b))
            .unwrap_or(u128::MAX)
    }

    pub fn check_against(&self, g: &SimpleGraph, m: usize) -> Result<()> {
        if self.allowed.len() != g.n() {
            return Err(Error::DimensionMismatch {
                expected: g.n(),
                got: self.allowed.len(),
            });
        }
        if self.target_size() > m {
            return Err(Error::InvalidArgument(format!(
                "constraint refers to target vertex {} but the target has {m}",
                self.target_size() - 1
            )));
        }
        Ok(())
    }

    /// Any two allowed sets are equal or disjoint.
    pub fn is_partition_box(&self) -> bool {
        for a in &self.allowed {
            for b in &self.allowed {
                if a != b && a.iter().any(|x| b.binary_search(x).is_ok()) {
                    return false;
                }
            }
        }
        true
    }

    /// Vertices in the same class have identical allowed sets.
    pub fn is_constant_on(&self, classes: &[usize]) -> bool {
        classes.len() == self.allowed.len()
            && (0..classes.len()).all(|u| {
                (0..classes.len())
                    .all(|v| classes[u] != classes[v] || self.allowed[u] == self.allowed[v])
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_classes_layout() {
        let b = BlockConstraint::from_classes(&[0, 1, 0, 2], &[3, 1, 3]).unwrap();
        assert_eq!(b.allowed()[0], vec![0, 1, 2]);
        assert_eq!(b.allowed()[1], vec![3]);
        assert_eq!(b.allowed()[3], vec![4, 5, 6]);
        assert_eq!(b.target_size(), 7);
        assert_eq!(b.map_count(), 27);
        assert!(b.is_partition_box());
        assert!(b.is_constant_on(&[0, 1, 0, 2]));
        assert!(!b.is_constant_on(&[0, 0, 0, 2]));
    }

    #[test]
    fn rejects_empty_sets() {
        assert!(BlockConstraint::new(vec![vec![0], vec![]]).is_err());
        let overlapping = BlockConstraint::new(vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert!(!overlapping.is_partition_box());
    }
}
