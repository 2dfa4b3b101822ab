//! Variable elimination over the vertices of the pattern graph.
//!
//! Every edge `ab` of `G` is a factor `w[φ(a)][φ(b)]` over the variables
//! `φ(a), φ(b)`. Eliminating a vertex multiplies the factors that mention it
//! and sums it out, leaving one factor over its remaining neighbours. The
//! order is greedy min-fill on `G`, ties broken by the lowest vertex index.

use super::ring::Weight;
use crate::graph::{bits, SimpleGraph};

/// Vertex elimination order with the bags it produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationOrder {
    pub order: Vec<usize>,
    /// Largest bag (eliminated vertex plus its neighbours at that point).
    pub width: usize,
    /// Neighbours of `order[i]` at the time it is eliminated.
    pub bags: Vec<u16>,
}

impl EliminationOrder {
    pub fn min_fill(g: &SimpleGraph) -> Self {
        let n = g.n();
        let mut adj: Vec<u16> = g.rows().to_vec();
        let mut remaining = g.vertex_mask();
        let mut order = Vec::with_capacity(n);
        let mut bags = Vec::with_capacity(n);
        let mut width = 0;
        while remaining != 0 {
            let mut best: Option<(usize, usize)> = None;
            for v in bits(remaining) {
                let nb = adj[v] & remaining;
                let mut fill = 0;
                for u in bits(nb) {
                    fill += (nb & !adj[u] & !(1 << u)).count_ones() as usize;
                }
                let fill = fill / 2;
                if best.is_none_or(|(f, _)| fill < f) {
                    best = Some((fill, v));
                }
            }
            let (_, v) = best.expect("remaining is nonempty");
            let nb = adj[v] & remaining;
            for u in bits(nb) {
                adj[u] |= nb & !(1 << u);
            }
            remaining &= !(1 << v);
            width = width.max(nb.count_ones() as usize + 1);
            order.push(v);
            bags.push(nb);
        }
        EliminationOrder { order, width, bags }
    }

    /// Size of the largest intermediate table for the given domain sizes.
    pub fn largest_table(&self, domain_sizes: &[usize]) -> u128 {
        self.bags
            .iter()
            .map(|&nb| bits(nb).map(|u| domain_sizes[u] as u128).product::<u128>())
            .max()
            .unwrap_or(1)
    }

    /// Total number of table cell visits, `Σ Π_{bag} d`.
    pub fn cost_estimate(&self, domain_sizes: &[usize]) -> u128 {
        self.order
            .iter()
            .zip(&self.bags)
            .map(|(&v, &nb)| {
                domain_sizes[v] as u128 * bits(nb).map(|u| domain_sizes[u] as u128).product::<u128>()
            })
            .sum()
    }
}

struct Factor<T> {
    vars: Vec<usize>,
    radix: Vec<usize>,
    table: Vec<T>,
}

impl<T> Factor<T> {
    fn stride_of(&self, var: usize) -> usize {
        let mut s = 1;
        for (k, &x) in self.vars.iter().enumerate() {
            if x == var {
                return s;
            }
            s *= self.radix[k];
        }
        0
    }
}

/// Weight table `w[a * m + b]` over target vertices, with per-vertex domains.
pub(crate) struct Problem<'a, T> {
    pub g: &'a SimpleGraph,
    pub m: usize,
    pub weights: &'a [T],
    pub domains: &'a [Vec<usize>],
}

pub(crate) fn eliminate<T: Weight>(p: &Problem<'_, T>, order: &EliminationOrder) -> T {
    let g = p.g;
    let mut factors: Vec<Factor<T>> = g
        .edges()
        .into_iter()
        .map(|(a, b)| {
            let (da, db) = (&p.domains[a], &p.domains[b]);
            let mut table = Vec::with_capacity(da.len() * db.len());
            for &tb in db {
                for &ta in da {
                    table.push(p.weights[ta * p.m + tb].clone());
                }
            }
            Factor {
                vars: vec![a, b],
                radix: vec![da.len(), db.len()],
                table,
            }
        })
        .collect();
    let mut result = T::multiplicative_identity();

    for &v in &order.order {
        let dv = p.domains[v].len();
        let (touching, rest): (Vec<_>, Vec<_>) =
            factors.into_iter().partition(|f| f.vars.contains(&v));
        factors = rest;
        if touching.is_empty() {
            result = result.mul(&T::from_count(dv));
            continue;
        }
        let mut scope: Vec<usize> = touching
            .iter()
            .flat_map(|f| f.vars.iter().copied())
            .filter(|&x| x != v)
            .collect();
        scope.sort_unstable();
        scope.dedup();
        let radix: Vec<usize> = scope.iter().map(|&x| p.domains[x].len()).collect();
        let size: usize = radix.iter().product();

        let sv: Vec<usize> = touching.iter().map(|f| f.stride_of(v)).collect();
        let su: Vec<Vec<usize>> = touching
            .iter()
            .map(|f| scope.iter().map(|&x| f.stride_of(x)).collect())
            .collect();
        let nf = touching.len();
        let mut base = vec![0usize; nf];
        let mut counters = vec![0usize; scope.len()];
        let mut table = Vec::with_capacity(size);

        for _ in 0..size {
            let mut acc = T::additive_identity();
            'values: for xv in 0..dv {
                let mut prod = touching[0].table[base[0] + xv * sv[0]].clone();
                if prod.is_zero_weight() {
                    continue;
                }
                for f in 1..nf {
                    let w = &touching[f].table[base[f] + xv * sv[f]];
                    if w.is_zero_weight() {
                        continue 'values;
                    }
                    prod = prod.mul(w);
                }
                acc.add_assign(&prod);
            }
            table.push(acc);
            for pos in 0..counters.len() {
                counters[pos] += 1;
                for f in 0..nf {
                    base[f] += su[f][pos];
                }
                if counters[pos] < radix[pos] {
                    break;
                }
                for f in 0..nf {
                    base[f] -= su[f][pos] * radix[pos];
                }
                counters[pos] = 0;
            }
        }
        factors.push(Factor {
            vars: scope,
            radix,
            table,
        });
    }
    for f in factors {
        debug_assert!(f.vars.is_empty());
        result = result.mul(&f.table[0]);
    }
    result
}

/// Sum over all admissible maps of the product of edge weights.
pub(crate) fn brute_force<T: Weight>(p: &Problem<'_, T>) -> T {
    let n = p.g.n();
    let edges = p.g.edges();
    let mut idx = vec![0usize; n];
    let mut total = T::additive_identity();
    loop {
        let mut prod = T::multiplicative_identity();
        for &(a, b) in &edges {
            let w = &p.weights[p.domains[a][idx[a]] * p.m + p.domains[b][idx[b]]];
            prod = prod.mul(w);
            if prod.is_zero_weight() {
                break;
            }
        }
        total.add_assign(&prod);
        let mut pos = 0;
        loop {
            if pos == n {
                return total;
            }
            idx[pos] += 1;
            if idx[pos] < p.domains[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_fill_on_trees_has_width_two() {
        let t = SimpleGraph::path(8).unwrap();
        let o = EliminationOrder::min_fill(&t);
        assert_eq!(o.width, 2);
        let mut sorted = o.order.clone();
        sorted.sort();
        assert_eq!(sorted, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn complete_graph_width() {
        let k5 = SimpleGraph::complete(5).unwrap();
        assert_eq!(EliminationOrder::min_fill(&k5).width, 5);
        assert_eq!(EliminationOrder::min_fill(&k5).order, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn ties_break_to_lowest_index() {
        let c6 = SimpleGraph::cycle(6).unwrap();
        assert_eq!(EliminationOrder::min_fill(&c6).order[0], 0);
    }
}
