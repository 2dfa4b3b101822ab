//! Closed-form ±1 certificates behind the parity filters.
//!
//! Each one sends a union of colour-refinement classes to its own target
//! vertex, puts weight −1 on a single target entry and 1 elsewhere, so the
//! restricted count is `(-1)^k` for the number `k` of edges landing on that
//! entry.

use num_rational::BigRational;

use super::{WitnessCertificate, WitnessMethod};
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, WeightedGraph};
use crate::hom::BlockConstraint;
use crate::structure::ClassParityFailure;

fn minus_one() -> BigRational {
    BigRational::from_integer((-1).into())
}

fn build(
    g: &SimpleGraph,
    block_of: impl Fn(usize) -> usize,
    m: usize,
    negative: (usize, usize),
) -> Result<WitnessCertificate> {
    let blocks = BlockConstraint::new((0..g.n()).map(|v| vec![block_of(v)]).collect())?;
    let mut target = WeightedGraph::ones(m, true);
    target.set(negative.0, negative.1, minus_one());
    WitnessCertificate::from_target(g, target, Some(blocks), WitnessMethod::Parity, None)?
        .ok_or_else(|| Error::Verification("parity certificate did not come out negative".into()))
}

/// One looped vertex of weight −1; negative exactly when `|E|` is odd.
pub fn odd_edge_certificate(g: &SimpleGraph) -> Result<WitnessCertificate> {
    WitnessCertificate::from_target(
        g,
        WeightedGraph::single_loop(minus_one()),
        None,
        WitnessMethod::Parity,
        None,
    )?
    .ok_or_else(|| Error::InvalidArgument(format!("{g} has an even number of edges")))
}

/// Vertices of degree `d` go to target vertex 0, the rest to vertex 1, and
/// the 0–1 entry is −1. Every edge leaving the degree-`d` set crosses, and
/// there are `d·|A| − 2·e(A)` of them, odd when `d` and `|A|` are odd.
pub fn degree_parity_certificate(g: &SimpleGraph, d: usize) -> Result<WitnessCertificate> {
    build(g, |v| usize::from(g.degree(v) != d), 2, (0, 1))
}

/// A class spanning an odd edge count goes to a looped −1 vertex; for a
/// pair of classes with an odd crossing count the entry between their two
/// vertices is −1. All other vertices share one more target vertex.
pub fn class_parity_certificate(
    g: &SimpleGraph,
    classes: &[usize],
    failure: &ClassParityFailure,
) -> Result<WitnessCertificate> {
    match failure.classes[..] {
        [c] => build(g, |v| usize::from(classes[v] != c), 2, (0, 0)),
        [c, d] => build(
            g,
            |v| if classes[v] == c { 0 } else if classes[v] == d { 1 } else { 2 },
            3,
            (0, 1),
        ),
        _ => Err(Error::InvalidArgument("expected one or two classes".into())),
    }
}
