//! Even homomorphisms into complete graphs and the parameters built on them.
//!
//! A map `f: G -> K_n` is handled through its quotient: the partition of
//! `V(G)` into fibres. `r(f)`, `p(G)` and `r̄(G)` depend only on that
//! partition, so minima over maps become minima over the (Bell-number many)
//! independent partitions.

mod quotient;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{disjoint_union, SimpleGraph, WeightedGraph};
use crate::hom::hom_count;

pub use quotient::{enumerate_quotients, HalfInteger, OddnessProfile, QuotientMap, Quotients, QUOTIENT_MAX_VERTICES};

/// Cap on `2^C(n,2) · n^|V(g)|` for the expectation identity.
pub const EXPECTATION_WORK_CAP: u128 = 10_000_000;

/// `p(G)` (absent when no even quotient exists) and `r̄(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenParameters {
    pub p: Option<usize>,
    pub rbar: HalfInteger,
}

pub fn even_parameters(g: &SimpleGraph) -> Result<EvenParameters> {
    let mut p: Option<usize> = None;
    let mut rbar = HalfInteger::from_integer(g.n() as i64);
    for q in enumerate_quotients(g)? {
        rbar = rbar.min(q.r_value());
        if q.is_even() {
            let d = q.image_deficiency();
            p = Some(p.map_or(d, |x| x.min(d)));
        }
    }
    Ok(EvenParameters { p, rbar })
}

pub fn p_value(g: &SimpleGraph) -> Result<Option<usize>> {
    Ok(even_parameters(g)?.p)
}

pub fn rbar_value(g: &SimpleGraph) -> Result<HalfInteger> {
    Ok(even_parameters(g)?.rbar)
}

/// Both sides of `p(G ⊔ G) = r̄(G ⊔ G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct P2Report {
    pub p: Option<usize>,
    pub rbar: HalfInteger,
}

impl P2Report {
    pub fn holds(&self) -> bool {
        self.p.map(|p| HalfInteger::from_integer(p as i64)) == Some(self.rbar)
    }
}

pub fn check_p2_identity(g: &SimpleGraph) -> Result<P2Report> {
    if 2 * g.n() > QUOTIENT_MAX_VERTICES {
        return Err(Error::too_large(
            "doubled graph vertices",
            2 * g.n() as u128,
            QUOTIENT_MAX_VERTICES as u128,
        ));
    }
    let EvenParameters { p, rbar } = even_parameters(&disjoint_union(g, g)?)?;
    Ok(P2Report { p, rbar })
}

/// An even quotient with at least `|V(G)|/2` classes, taking the one with
/// the most classes (first in enumeration order among ties).
pub fn check_evenhalf(g: &SimpleGraph) -> Result<Option<QuotientMap>> {
    let mut best: Option<QuotientMap> = None;
    for q in enumerate_quotients(g)? {
        if q.is_even() && 2 * q.num_classes() >= g.n() && best.as_ref().is_none_or(|b| q.num_classes() > b.num_classes())
        {
            best = Some(q);
        }
    }
    Ok(best)
}

/// An even homomorphism `G -> G`: an even quotient together with an
/// injective homomorphism of its quotient graph into `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenSelfHom {
    pub quotient: QuotientMap,
    /// Vertex of `G` receiving each class.
    pub placement: Vec<usize>,
}

impl EvenSelfHom {
    /// The composed vertex map `V(G) -> V(G)`.
    pub fn map(&self) -> Vec<usize> {
        self.quotient.classes().iter().map(|&c| self.placement[c]).collect()
    }

    /// Checks from scratch that `map` is a homomorphism with every edge of
    /// `g` hit an even number of times.
    pub fn verify(&self, g: &SimpleGraph) -> Result<()> {
        let f = self.map();
        if f.len() != g.n() || f.iter().any(|&v| v >= g.n()) {
            return Err(Error::Verification("map does not send V(G) into V(G)".into()));
        }
        let n = g.n();
        let mut hits = vec![0usize; n * n];
        for (u, v) in g.edges() {
            let (a, b) = (f[u].min(f[v]), f[u].max(f[v]));
            if !g.has_edge(a, b) {
                return Err(Error::Verification(format!("edge {u}-{v} is not sent to an edge")));
            }
            hits[a * n + b] += 1;
        }
        match hits.iter().position(|&h| h % 2 == 1) {
            Some(i) => Err(Error::Verification(format!(
                "edge {}-{} has an odd preimage",
                i / n,
                i % n
            ))),
            None => Ok(()),
        }
    }
}

fn place(q: &SimpleGraph, g: &SimpleGraph, c: usize, placement: &mut Vec<usize>, used: u16) -> bool {
    if c == q.n() {
        return true;
    }
    for v in 0..g.n() {
        if used >> v & 1 == 1 || g.degree(v) < q.degree(c) {
            continue;
        }
        if (0..c).all(|d| !q.has_edge(c, d) || g.has_edge(v, placement[d])) {
            placement.push(v);
            if place(q, g, c + 1, placement, used | 1 << v) {
                return true;
            }
            placement.pop();
        }
    }
    false
}

/// Searches for an even homomorphism of `g` into itself.
///
/// The fibres of any such map form an even quotient whose quotient graph
/// sits injectively inside `g`, and conversely, so the search runs over
/// even quotients and looks for an injective placement of each.
pub fn check_even_selfhom(g: &SimpleGraph) -> Result<Option<EvenSelfHom>> {
    for q in enumerate_quotients(g)? {
        if !q.is_even() {
            continue;
        }
        let mut placement = Vec::with_capacity(q.num_classes());
        if place(&q.quotient_graph(), g, 0, &mut placement, 0) {
            return Ok(Some(EvenSelfHom { quotient: q, placement }));
        }
    }
    Ok(None)
}

/// The average of `hom(G, K_n^w)` over all `±1` edge weightings `w`,
/// against the number of even homomorphisms `G -> K_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectationReport {
    pub target_size: usize,
    pub patterns: u64,
    pub average: BigRational,
    pub even_maps: u64,
}

impl ExpectationReport {
    pub fn holds(&self) -> bool {
        self.average == BigRational::from_integer(BigInt::from(self.even_maps))
    }
}

fn count_even_maps(g: &SimpleGraph, n: usize) -> u64 {
    let edges = g.edges();
    let mut f = vec![0usize; g.n()];
    let mut total = 0;
    loop {
        let mut parity = vec![false; n * n];
        let mut ok = true;
        for &(u, v) in &edges {
            if f[u] == f[v] {
                ok = false;
                break;
            }
            let (a, b) = (f[u].min(f[v]), f[u].max(f[v]));
            parity[a * n + b] ^= true;
        }
        if ok && !parity.contains(&true) {
            total += 1;
        }
        let Some(i) = (0..f.len()).rev().find(|&i| f[i] + 1 < n) else {
            return total;
        };
        f[i] += 1;
        f[i + 1..].iter_mut().for_each(|x| *x = 0);
    }
}

pub fn expectation_identity_check(g: &SimpleGraph, n: usize) -> Result<ExpectationReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("target size must be positive".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let patterns = 1u128.checked_shl(pairs.len() as u32).unwrap_or(u128::MAX);
    let work = (n as u128)
        .checked_pow(g.n() as u32)
        .and_then(|m| m.checked_mul(patterns))
        .unwrap_or(u128::MAX);
    if work > EXPECTATION_WORK_CAP {
        return Err(Error::too_large("expectation identity work", work, EXPECTATION_WORK_CAP));
    }
    let mut sum = BigRational::zero();
    for w in 0..patterns as u64 {
        let mut h = WeightedGraph::zeros(n);
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            let sign = if w >> bit & 1 == 1 { -BigRational::one() } else { BigRational::one() };
            h.set(i, j, sign);
        }
        sum += hom_count(g, &h)?;
    }
    Ok(ExpectationReport {
        target_size: n,
        patterns: patterns as u64,
        average: sum / BigRational::from_integer(BigInt::from(patterns as u64)),
        even_maps: count_even_maps(g, n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_graphs;
    use crate::structure::is_symmetric;

    fn half(doubled: i64) -> HalfInteger {
        HalfInteger::from_doubled(doubled)
    }

    #[test]
    fn parameter_examples() {
        // Merging one opposite pair of C4 already gives multiplicities 2, 2.
        let c4 = SimpleGraph::cycle(4).unwrap();
        assert_eq!(p_value(&c4).unwrap(), Some(1));
        let even = QuotientMap::from_labels(&c4, &[0, 1, 0, 2]).unwrap();
        assert_eq!(even.multiplicities(), &[((0, 1), 2), ((0, 2), 2)]);
        let k2 = SimpleGraph::complete(2).unwrap();
        assert_eq!(rbar_value(&k2).unwrap(), half(2));
        assert_eq!(p_value(&k2).unwrap(), None);
        for g in [k2, SimpleGraph::path(3).unwrap(), SimpleGraph::complete(3).unwrap()] {
            let doubled = disjoint_union(&g, &g).unwrap();
            assert_eq!(rbar_value(&doubled).unwrap(), 2 * rbar_value(&g).unwrap());
        }
    }

    #[test]
    fn p2_examples() {
        let r = check_p2_identity(&SimpleGraph::complete(2).unwrap()).unwrap();
        assert_eq!(r, P2Report { p: Some(2), rbar: half(4) });
        assert!(r.holds());
        assert!(check_p2_identity(&SimpleGraph::path(3).unwrap()).unwrap().holds());
        assert!(check_p2_identity(&SimpleGraph::complete(3).unwrap()).unwrap().holds());
        assert!(check_p2_identity(&SimpleGraph::empty(6).unwrap()).unwrap_err().is_cap_refusal());
    }

    #[test]
    fn evenhalf_examples() {
        let c4 = SimpleGraph::cycle(4).unwrap();
        let q = check_evenhalf(&c4).unwrap().unwrap();
        assert_eq!(q.num_classes(), 3);
        assert!(QuotientMap::from_labels(&c4, &[0, 1, 0, 1]).unwrap().is_even());
        let q = check_evenhalf(&SimpleGraph::path(3).unwrap()).unwrap().unwrap();
        assert_eq!(q.classes(), &[0, 1, 0]);
        assert!(check_evenhalf(&SimpleGraph::complete(2).unwrap()).unwrap().is_none());
    }

    #[test]
    fn selfhom_examples() {
        for g in [SimpleGraph::cycle(4).unwrap(), SimpleGraph::path(3).unwrap()] {
            check_even_selfhom(&g).unwrap().unwrap().verify(&g).unwrap();
        }
        assert!(check_even_selfhom(&SimpleGraph::complete(3).unwrap()).unwrap().is_none());
    }

    #[test]
    fn symmetric_graphs_have_even_selfhoms_and_foldings() {
        for n in 1..=6 {
            for g in enumerate_graphs(n).unwrap() {
                if let Some(w) = is_symmetric(&g) {
                    check_even_selfhom(&g).unwrap().unwrap().verify(&g).unwrap();
                    let q = QuotientMap::folding(&g, &w).unwrap();
                    assert!(q.is_even());
                    assert!(2 * q.num_classes() >= n);
                }
            }
        }
    }

    #[test]
    fn verifier_rejects_odd_maps() {
        let p3 = SimpleGraph::path(3).unwrap();
        let bad = EvenSelfHom {
            quotient: QuotientMap::identity(&p3),
            placement: vec![0, 1, 2],
        };
        assert!(bad.verify(&p3).is_err());
    }

    #[test]
    fn expectation_examples() {
        let c4 = SimpleGraph::cycle(4).unwrap();
        let r = expectation_identity_check(&c4, 2).unwrap();
        assert_eq!((r.patterns, r.even_maps), (2, 2));
        assert!(r.holds());
        let r = expectation_identity_check(&SimpleGraph::complete(2).unwrap(), 2).unwrap();
        assert_eq!(r.even_maps, 0);
        assert!(r.holds());
        let two_k2 = disjoint_union(&SimpleGraph::complete(2).unwrap(), &SimpleGraph::complete(2).unwrap()).unwrap();
        assert!(expectation_identity_check(&two_k2, 3).unwrap().holds());
        assert!(expectation_identity_check(&SimpleGraph::empty(9).unwrap(), 6).unwrap_err().is_cap_refusal());
    }

    /// Even maps counted through quotients: each even quotient with `k`
    /// classes contributes the falling factorial `n(n-1)...(n-k+1)`.
    #[test]
    fn even_maps_agree_with_quotients() {
        for v in 1..=5 {
            for g in enumerate_graphs(v).unwrap() {
                for n in 1..=3u64 {
                    let via_quotients: u64 = enumerate_quotients(&g)
                        .unwrap()
                        .filter(|q| q.is_even())
                        .map(|q| (0..q.num_classes() as u64).map(|i| n.saturating_sub(i)).product::<u64>())
                        .sum();
                    assert_eq!(count_even_maps(&g, n as usize), via_quotients, "{g} n={n}");
                }
            }
        }
    }
}
