use std::ops::RangeInclusive;

use num_traits::Signed;

use super::{WitnessCertificate, WitnessMethod};
use crate::error::Result;
use crate::graph::{SimpleGraph, WeightedGraph};
use crate::hom::{HomLimits, IntegerHomCounter};

pub const DEFAULT_ENTRY_RANGE: RangeInclusive<i64> = -2..=2;

/// Steps a mixed-radix counter, last digit fastest; false after wrapping.
fn advance(idx: &mut [usize], base: usize) -> bool {
    for k in idx.iter_mut().rev() {
        *k += 1;
        if *k < base {
            return true;
        }
        *k = 0;
    }
    false
}

/// Scans every symmetric integer matrix of each size in `sizes` (in that
/// order) with entries in `range`, and certifies the first one giving a
/// negative count.
///
/// Entries are enumerated over the upper triangle in row-major order, the
/// last entry varying fastest; matrices without a negative entry are
/// skipped since their counts cannot be negative.
pub fn enumerate_matrix_witness(
    g: &SimpleGraph,
    sizes: &[usize],
    range: RangeInclusive<i64>,
) -> Result<Option<WitnessCertificate>> {
    let values: Vec<i64> = range.collect();
    if values.is_empty() || values.iter().all(|&v| v >= 0) {
        return Ok(None);
    }
    for &m in sizes {
        if m == 0 {
            continue;
        }
        let counter = IntegerHomCounter::new(g, m, &HomLimits::default())?;
        let slots: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
        let mut idx = vec![0usize; slots.len()];
        let mut weights = vec![0i64; m * m];
        loop {
            if idx.iter().any(|&k| values[k] < 0) {
                for (s, &(i, j)) in slots.iter().enumerate() {
                    weights[i * m + j] = values[idx[s]];
                    weights[j * m + i] = values[idx[s]];
                }
                if counter.count(&weights).is_negative() {
                    let target = WeightedGraph::from_fn(m, |i, j| {
                        num_rational::BigRational::from_integer(weights[i * m + j].into())
                    });
                    let cert =
                        WitnessCertificate::from_target(g, target, None, WitnessMethod::MatrixEnum, None)?;
                    debug_assert!(cert.is_some());
                    if cert.is_some() {
                        return Ok(cert);
                    }
                }
            }
            if !advance(&mut idx, values.len()) {
                break;
            }
        }
    }
    Ok(None)
}
