use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::elimination::{brute_force, eliminate, EliminationOrder, Problem};
use super::BlockConstraint;
use crate::error::{Error, Result};
use crate::graph::{disjoint_union, LoopedGraph, SimpleGraph, WeightedGraph};

/// Limits applied by the counting routines.
#[derive(Clone, Debug)]
pub struct HomLimits {
    /// Largest intermediate elimination table, in cells.
    pub cell_budget: u128,
    /// Largest number of maps enumerated by brute force.
    pub brute_force_cap: u128,
}

impl Default for HomLimits {
    fn default() -> Self {
        HomLimits {
            cell_budget: 1 << 26,
            brute_force_cap: 10_000_000,
        }
    }
}

/// Which algorithm produced a count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    Elimination,
    BruteForce,
}

fn full_domains(g: &SimpleGraph, m: usize) -> Vec<Vec<usize>> {
    vec![(0..m).collect(); g.n()]
}

fn map_count(domains: &[Vec<usize>]) -> u128 {
    domains
        .iter()
        .map(|d| d.len() as u128)
        .try_fold(1u128, |acc, d| acc.checked_mul(d))
        .unwrap_or(u128::MAX)
}

/// Integer-scaled target: `weights = d * w`, plus the matching `d^|E|`.
struct Scaled {
    ints: Vec<BigInt>,
    denom_power: BigInt,
    max_abs_bits: u64,
}

fn scale(g: &SimpleGraph, h: &WeightedGraph) -> Scaled {
    let (ints, d) = h.integer_scaled();
    let max_abs_bits = ints.iter().map(|x| x.bits()).max().unwrap_or(0);
    Scaled {
        ints,
        denom_power: num_traits::pow(d, g.edge_count()),
        max_abs_bits,
    }
}

/// log2 upper bound on every partial sum produced while counting.
fn magnitude_bits(domains: &[Vec<usize>], edges: usize, max_abs_bits: u64) -> f64 {
    let maps: f64 = domains.iter().map(|d| (d.len().max(1) as f64).log2()).sum();
    maps + edges as f64 * max_abs_bits as f64
}

fn run_integer(
    g: &SimpleGraph,
    m: usize,
    scaled: &Scaled,
    domains: &[Vec<usize>],
    method: CountMethod,
) -> BigInt {
    let order = EliminationOrder::min_fill(g);
    if magnitude_bits(domains, g.edge_count(), scaled.max_abs_bits) < 125.0 {
        let weights: Vec<i128> = scaled
            .ints
            .iter()
            .map(|x| x.to_i128().expect("magnitude bound checked"))
            .collect();
        let p = Problem {
            g,
            m,
            weights: &weights,
            domains,
        };
        let v = match method {
            CountMethod::Elimination => eliminate(&p, &order),
            CountMethod::BruteForce => brute_force(&p),
        };
        BigInt::from(v)
    } else {
        let p = Problem {
            g,
            m,
            weights: &scaled.ints,
            domains,
        };
        match method {
            CountMethod::Elimination => eliminate(&p, &order),
            CountMethod::BruteForce => brute_force(&p),
        }
    }
}

fn count_with_domains(
    g: &SimpleGraph,
    h: &WeightedGraph,
    domains: &[Vec<usize>],
    limits: &HomLimits,
    method: Option<CountMethod>,
) -> Result<BigRational> {
    let order = EliminationOrder::min_fill(g);
    let sizes: Vec<usize> = domains.iter().map(Vec::len).collect();
    let table = order.largest_table(&sizes);
    let maps = map_count(domains);
    let method = match method {
        Some(CountMethod::BruteForce) if maps > limits.brute_force_cap => {
            return Err(Error::too_large("brute-force map count", maps, limits.brute_force_cap))
        }
        Some(m) => m,
        None if table <= limits.cell_budget => CountMethod::Elimination,
        None if maps <= limits.brute_force_cap => CountMethod::BruteForce,
        None => {
            return Err(Error::too_large("elimination table cells", table, limits.cell_budget))
        }
    };
    if method == CountMethod::Elimination && table > limits.cell_budget {
        return Err(Error::too_large("elimination table cells", table, limits.cell_budget));
    }
    let scaled = scale(g, h);
    let raw = run_integer(g, h.m(), &scaled, domains, method);
    Ok(BigRational::new(raw, scaled.denom_power))
}

/// Repeated exact counts of one pattern graph into small integer targets
/// sharing a vertex count, reusing the elimination order.
pub struct IntegerHomCounter<'a> {
    g: &'a SimpleGraph,
    m: usize,
    order: EliminationOrder,
    domains: Vec<Vec<usize>>,
}

impl<'a> IntegerHomCounter<'a> {
    pub fn new(g: &'a SimpleGraph, m: usize, limits: &HomLimits) -> Result<Self> {
        let order = EliminationOrder::min_fill(g);
        let table = order.largest_table(&vec![m; g.n()]);
        if table > limits.cell_budget {
            return Err(Error::too_large("elimination table cells", table, limits.cell_budget));
        }
        Ok(IntegerHomCounter {
            g,
            m,
            order,
            domains: full_domains(g, m),
        })
    }

    /// Count for the row-major `m × m` symmetric integer matrix `weights`.
    pub fn count(&self, weights: &[i64]) -> BigInt {
        assert_eq!(weights.len(), self.m * self.m, "weight table has the wrong size");
        let max_bits = weights.iter().map(|w| 64 - w.unsigned_abs().leading_zeros() as u64).max().unwrap_or(0);
        if magnitude_bits(&self.domains, self.g.edge_count(), max_bits) < 125.0 {
            let w: Vec<i128> = weights.iter().map(|&x| x as i128).collect();
            let p = Problem {
                g: self.g,
                m: self.m,
                weights: &w,
                domains: &self.domains,
            };
            BigInt::from(eliminate(&p, &self.order))
        } else {
            let w: Vec<BigInt> = weights.iter().map(|&x| BigInt::from(x)).collect();
            let p = Problem {
                g: self.g,
                m: self.m,
                weights: &w,
                domains: &self.domains,
            };
            eliminate(&p, &self.order)
        }
    }
}

/// `hom(G, H)`: sum over all maps `V(G) → V(H)` of the product over the
/// edges of `G` of the image weights. Exact.
pub fn hom_count(g: &SimpleGraph, h: &WeightedGraph) -> Result<BigRational> {
    hom_count_with(g, h, &HomLimits::default())
}

pub fn hom_count_with(g: &SimpleGraph, h: &WeightedGraph, limits: &HomLimits) -> Result<BigRational> {
    check_target(h)?;
    count_with_domains(g, h, &full_domains(g, h.m()), limits, None)
}

/// Same sum restricted to maps sending each vertex into its allowed set.
pub fn restricted_hom_count(
    g: &SimpleGraph,
    h: &WeightedGraph,
    blocks: &BlockConstraint,
) -> Result<BigRational> {
    check_target(h)?;
    blocks.check_against(g, h.m())?;
    count_with_domains(g, h, blocks.allowed(), &HomLimits::default(), None)
}

/// Plain enumeration of every map; the oracle for the elimination route.
pub fn hom_count_brute_force(g: &SimpleGraph, h: &WeightedGraph) -> Result<BigRational> {
    check_target(h)?;
    count_with_domains(
        g,
        h,
        &full_domains(g, h.m()),
        &HomLimits::default(),
        Some(CountMethod::BruteForce),
    )
}

pub fn restricted_hom_count_brute_force(
    g: &SimpleGraph,
    h: &WeightedGraph,
    blocks: &BlockConstraint,
) -> Result<BigRational> {
    check_target(h)?;
    blocks.check_against(g, h.m())?;
    count_with_domains(g, h, blocks.allowed(), &HomLimits::default(), Some(CountMethod::BruteForce))
}

/// Floating-point count, for quick numerics only (never for certificates).
pub fn hom_count_f64(g: &SimpleGraph, weights: &[f64], m: usize) -> f64 {
    let domains = full_domains(g, m);
    let p = Problem {
        g,
        m,
        weights,
        domains: &domains,
    };
    eliminate(&p, &EliminationOrder::min_fill(g))
}

fn check_target(h: &WeightedGraph) -> Result<()> {
    if h.m() == 0 {
        return Err(Error::InvalidArgument("target has no vertices".into()));
    }
    Ok(())
}

/// `t(G, H) = hom(G, H) / |V(H)|^|V(G)|`.
pub fn t_density(g: &SimpleGraph, h: &WeightedGraph) -> Result<BigRational> {
    let hom = hom_count(g, h)?;
    Ok(hom / BigRational::from_integer(num_traits::pow(BigInt::from(h.m()), g.n())))
}

/// Runs elimination and brute force and insists on equality.
pub fn hom_dp_vs_bruteforce(g: &SimpleGraph, h: &WeightedGraph) -> Result<BigRational> {
    let dp = hom_count(g, h)?;
    let bf = hom_count_brute_force(g, h)?;
    if dp != bf {
        return Err(Error::Verification(format!(
            "elimination gave {dp}, brute force gave {bf} for {g}"
        )));
    }
    Ok(dp)
}

/// Both sides of `t(G1 ⊔ G2, H) = t(G1, H) · t(G2, H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductLawReport {
    pub union_density: BigRational,
    pub product_of_densities: BigRational,
}

pub fn product_law_check(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
    h: &WeightedGraph,
) -> Result<ProductLawReport> {
    let union = disjoint_union(g1, g2)?;
    let report = ProductLawReport {
        union_density: t_density(&union, h)?,
        product_of_densities: t_density(g1, h)? * t_density(g2, h)?,
    };
    if report.union_density != report.product_of_densities {
        return Err(Error::Verification(format!(
            "t(G1G2,H) = {} but t(G1,H)t(G2,H) = {}",
            report.union_density, report.product_of_densities
        )));
    }
    Ok(report)
}

/// Default cap on `|V(h)|^|V(pattern)|` for [`target_power`].
pub const TARGET_POWER_CAP: u128 = 4096;

/// `H^P`: vertices are tuples `x ∈ V(H)^{V(P)}` (tuple index `Σ x_i m^(k-1-i)`),
/// and `w'(x, y) = Π w(x_i, y_j)` over ordered pairs `(i, j)` with `ij ∈ E(P)`;
/// a non-loop edge contributes both orientations, a loop contributes once.
pub fn target_power(h: &WeightedGraph, pattern: &LoopedGraph, cap: u128) -> Result<WeightedGraph> {
    let m = h.m();
    let k = pattern.n();
    let size = (m as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::too_large("target power vertex count", size, cap));
    }
    let size = size as usize;
    let mut ordered: Vec<(usize, usize)> = Vec::new();
    for (i, j) in pattern.edges() {
        ordered.push((i, j));
        if i != j {
            ordered.push((j, i));
        }
    }
    let tuple = |mut x: usize| {
        let mut t = vec![0usize; k];
        for i in (0..k).rev() {
            t[i] = x % m;
            x /= m;
        }
        t
    };
    let tuples: Vec<Vec<usize>> = (0..size).map(tuple).collect();
    Ok(WeightedGraph::from_fn(size, |a, b| {
        let (x, y) = (&tuples[a], &tuples[b]);
        let mut w = BigRational::one();
        for &(i, j) in &ordered {
            let f = h.get(x[i], y[j]);
            if f.is_zero() {
                return BigRational::zero();
            }
            w *= f;
        }
        w
    }))
}

/// Sign of an exact rational as -1, 0 or 1.
pub fn sign(x: &BigRational) -> i8 {
    if x.is_negative() {
        -1
    } else if x.is_zero() {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_graphs, power};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn k(n: usize) -> SimpleGraph {
        SimpleGraph::complete(n).unwrap()
    }

    #[test]
    fn k2_into_k3() {
        let h = WeightedGraph::ones(3, false);
        assert_eq!(hom_count(&k(2), &h).unwrap(), q(6));
    }

    #[test]
    fn triangle_into_negative_loop() {
        let h = WeightedGraph::single_loop(q(-1));
        assert_eq!(hom_count(&k(3), &h).unwrap(), q(-1));
        assert_eq!(t_density(&k(3), &h).unwrap(), q(-1));
    }

    #[test]
    fn c4_into_signed_edge() {
        let c4 = SimpleGraph::cycle(4).unwrap();
        for w in [-1, 1] {
            let h = WeightedGraph::from_integers(&[vec![0, w], vec![w, 0]]).unwrap();
            assert_eq!(hom_count(&c4, &h).unwrap(), q(2));
            assert_eq!(hom_count_brute_force(&c4, &h).unwrap(), q(2));
        }
    }

    #[test]
    fn density_of_k2_in_k2() {
        let h = WeightedGraph::ones(2, false);
        assert_eq!(t_density(&k(2), &h).unwrap(), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn isolated_vertices_multiply_by_target_size() {
        let g = SimpleGraph::empty(3).unwrap();
        let h = WeightedGraph::ones(4, true);
        assert_eq!(hom_count(&g, &h).unwrap(), q(64));
    }

    #[test]
    fn all_small_graphs_against_signed_triangles() {
        for n in 1..=4 {
            for g in enumerate_graphs(n).unwrap() {
                for mask in 0..64u32 {
                    let entries: Vec<i64> = (0..6).map(|b| if mask >> b & 1 == 1 { -1 } else { 1 }).collect();
                    let rows = vec![
                        vec![entries[0], entries[1], entries[2]],
                        vec![entries[1], entries[3], entries[4]],
                        vec![entries[2], entries[4], entries[5]],
                    ];
                    let h = WeightedGraph::from_integers(&rows).unwrap();
                    hom_dp_vs_bruteforce(&g, &h).unwrap();
                }
            }
        }
    }

    #[test]
    fn big_values_use_bigint_path() {
        // |E| = 45, weights up to 2^40: far beyond i128
        let g = k(10);
        let big = 1i64 << 40;
        let h = WeightedGraph::from_integers(&[vec![big, -1], vec![-1, big]]).unwrap();
        let v = hom_count(&g, &h).unwrap();
        assert_eq!(v, hom_count_brute_force(&g, &h).unwrap());
        assert!(v.numer().bits() > 128);
    }

    #[test]
    fn budget_refusal() {
        let g = k(8);
        let h = WeightedGraph::ones(40, false);
        let limits = HomLimits {
            cell_budget: 1000,
            brute_force_cap: 1000,
        };
        let err = hom_count_with(&g, &h, &limits).unwrap_err();
        assert!(err.is_cap_refusal());
    }

    #[test]
    fn product_law_k2() {
        let h = WeightedGraph::from_integers(&[vec![1, -2], vec![-2, 3]]).unwrap();
        let r = product_law_check(&k(2), &k(2), &h).unwrap();
        let t = t_density(&k(2), &h).unwrap();
        assert_eq!(r.union_density, &t * &t);
        assert_eq!(t_density(&power(&k(2), 2).unwrap(), &h).unwrap(), &t * &t);
    }

    #[test]
    fn product_law_with_edgeless() {
        let h = WeightedGraph::from_integers(&[vec![0, 1, -1], vec![1, 2, 0], vec![-1, 0, 1]]).unwrap();
        let e = SimpleGraph::empty(2).unwrap();
        assert_eq!(t_density(&e, &h).unwrap(), q(1));
        product_law_check(&SimpleGraph::cycle(5).unwrap(), &e, &h).unwrap();
    }

    #[test]
    fn target_power_identities() {
        let beta = BigRational::new((-3).into(), 2.into());
        let h = WeightedGraph::single_loop(beta.clone());
        let looped_vertex = LoopedGraph::complete_looped(1).unwrap();
        assert_eq!(target_power(&h, &looped_vertex, TARGET_POWER_CAP).unwrap(), h);
        let k2 = LoopedGraph::from(&k(2));
        let p = target_power(&h, &k2, TARGET_POWER_CAP).unwrap();
        assert_eq!(p.m(), 1);
        assert_eq!(p.get(0, 0), &(&beta * &beta));
        let h3 = WeightedGraph::ones(3, false);
        let p3 = LoopedGraph::from(&SimpleGraph::path(3).unwrap());
        assert!(target_power(&h3, &p3, 26).is_err());
    }
}
