//! Canonical labeling by color refinement and individualization.
//!
//! The search tree individualizes one vertex of the first smallest
//! non-singleton cell at each node and refines to an equitable partition.
//! Every leaf is a discrete partition, i.e. a relabeling; the canonical graph
//! is the relabeling with the lexicographically least graph6 bit string.
//! Automorphisms discovered at leaves prune children lying in the same orbit
//! of the pointwise stabilizer of the current prefix.

use super::{bits, write_graph6, SimpleGraph, MAX_VERTICES};

/// Result of [`canonical_form`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// graph6 string of the canonical graph.
    pub graph6: String,
    /// `labeling[v]` is the canonical position of input vertex `v`.
    pub labeling: Vec<usize>,
    /// The input graph relabeled by `labeling`.
    pub graph: SimpleGraph,
}

const MAX_STORED_AUTOMORPHISMS: usize = 512;

type Colors = [u8; MAX_VERTICES];

struct Search<'a> {
    g: &'a SimpleGraph,
    n: usize,
    first: Option<(u128, Colors)>,
    best: Option<(u128, Colors)>,
    autos: Vec<Colors>,
}

/// Bit string of the graph relabeled by `lab`, in graph6 order, MSB first.
fn code(g: &SimpleGraph, lab: &Colors) -> u128 {
    let n = g.n();
    let mut inv = [0usize; MAX_VERTICES];
    for v in 0..n {
        inv[lab[v] as usize] = v;
    }
    let mut c = 0u128;
    for j in 1..n {
        let row = g.neighbors(inv[j]);
        for &vi in &inv[..j] {
            c = c << 1 | (row >> vi & 1) as u128;
        }
    }
    c
}

fn cell_count(colors: &Colors, n: usize) -> usize {
    let mut seen = 0u32;
    for &c in &colors[..n] {
        seen |= 1 << c;
    }
    seen.count_ones() as usize
}

/// Refines `colors` (ranks `0..k`) to the coarsest equitable refinement.
/// New ranks order vertices by (old rank, neighbor counts per old rank), so
/// the result is invariant under relabeling.
fn refine(g: &SimpleGraph, colors: &mut Colors) {
    let n = g.n();
    let mut k = cell_count(colors, n);
    let mut sigs: Vec<([u8; MAX_VERTICES + 1], usize)> = Vec::with_capacity(n);
    loop {
        if k == n {
            return;
        }
        sigs.clear();
        for v in 0..n {
            let mut sig = [0u8; MAX_VERTICES + 1];
            sig[0] = colors[v];
            for u in bits(g.neighbors(v)) {
                sig[1 + colors[u] as usize] += 1;
            }
            sigs.push((sig, v));
        }
        sigs.sort_unstable();
        let mut rank = 0u8;
        for i in 0..n {
            if i > 0 && sigs[i].0 != sigs[i - 1].0 {
                rank += 1;
            }
            colors[sigs[i].1] = rank;
        }
        let new_k = rank as usize + 1;
        if new_k == k {
            return;
        }
        k = new_k;
    }
}

fn individualize(g: &SimpleGraph, colors: &Colors, v: usize) -> Colors {
    let n = g.n();
    let cv = colors[v];
    let mut out = [0u8; MAX_VERTICES];
    for u in 0..n {
        out[u] = if colors[u] < cv || u == v {
            colors[u]
        } else {
            colors[u] + 1
        };
    }
    refine(g, &mut out);
    out
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Search<'_> {
    fn run(&mut self, colors: Colors, prefix: &mut Vec<usize>) {
        let n = self.n;
        let mut sizes = [0u8; MAX_VERTICES];
        for &c in &colors[..n] {
            sizes[c as usize] += 1;
        }
        let target = (0..n)
            .filter(|&c| sizes[c] > 1)
            .min_by_key(|&c| (sizes[c], c));
        let Some(target) = target else {
            self.leaf(colors);
            return;
        };
        let members: Vec<usize> = (0..n).filter(|&v| colors[v] as usize == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &members {
            if !explored.is_empty() {
                let mut parent: Vec<usize> = (0..n).collect();
                for a in &self.autos {
                    if prefix.iter().all(|&p| a[p] as usize == p) {
                        for x in 0..n {
                            let (rx, ry) = (find(&mut parent, x), find(&mut parent, a[x] as usize));
                            if rx != ry {
                                parent[rx] = ry;
                            }
                        }
                    }
                }
                let rv = find(&mut parent, v);
                if explored.iter().any(|&u| find(&mut parent, u) == rv) {
                    continue;
                }
            }
            explored.push(v);
            let child = individualize(self.g, &colors, v);
            prefix.push(v);
            self.run(child, prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, lab: Colors) {
        let c = code(self.g, &lab);
        for (other_code, other_lab) in [self.first, self.best].into_iter().flatten() {
            if other_code == c && other_lab != lab {
                // other^-1 ∘ lab is an automorphism
                let mut inv = [0u8; MAX_VERTICES];
                for v in 0..self.n {
                    inv[other_lab[v] as usize] = v as u8;
                }
                let mut auto = [0u8; MAX_VERTICES];
                for v in 0..self.n {
                    auto[v] = inv[lab[v] as usize];
                }
                if self.autos.len() < MAX_STORED_AUTOMORPHISMS && !self.autos.contains(&auto) {
                    self.autos.push(auto);
                }
            }
        }
        if self.first.is_none() {
            self.first = Some((c, lab));
        }
        match self.best {
            Some((b, _)) if b <= c => {}
            _ => self.best = Some((c, lab)),
        }
    }
}

fn canonical_labeling(g: &SimpleGraph) -> (u128, Colors) {
    let mut colors = [0u8; MAX_VERTICES];
    refine(g, &mut colors);
    let mut search = Search {
        g,
        n: g.n(),
        first: None,
        best: None,
        autos: Vec::new(),
    };
    search.run(colors, &mut Vec::new());
    search.best.expect("search reaches at least one leaf")
}

pub fn canonical_form(g: &SimpleGraph) -> CanonicalForm {
    let (_, lab) = canonical_labeling(g);
    let labeling: Vec<usize> = lab[..g.n()].iter().map(|&c| c as usize).collect();
    let graph = g.permuted(&labeling);
    CanonicalForm {
        graph6: write_graph6(&graph),
        labeling,
        graph,
    }
}

/// The canonical representative only.
pub fn canonical_graph(g: &SimpleGraph) -> SimpleGraph {
    let (_, lab) = canonical_labeling(g);
    let labeling: Vec<usize> = lab[..g.n()].iter().map(|&c| c as usize).collect();
    g.permuted(&labeling)
}

/// Canonical bit string; equal codes for equal vertex counts mean isomorphic graphs.
pub(crate) fn canonical_code(g: &SimpleGraph) -> u128 {
    canonical_labeling(g).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn p3_labelings_agree() {
        let a = SimpleGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = SimpleGraph::from_edges(3, &[(1, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_form(&a).graph6, canonical_form(&b).graph6);
    }

    #[test]
    fn c5_all_relabelings() {
        let c5 = SimpleGraph::cycle(5).unwrap();
        let reference = canonical_form(&c5).graph6;
        let perms = all_perms(5);
        assert_eq!(perms.len(), 120);
        for p in perms {
            assert_eq!(canonical_form(&c5.permuted(&p)).graph6, reference);
        }
    }

    #[test]
    fn k3_and_p3_differ() {
        let k3 = SimpleGraph::complete(3).unwrap();
        let p3 = SimpleGraph::path(3).unwrap();
        assert_ne!(canonical_form(&k3).graph6, canonical_form(&p3).graph6);
    }

    #[test]
    fn labeling_maps_to_canonical_graph() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=12);
            let mut g = SimpleGraph::empty(n).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(u, v);
                    }
                }
            }
            let cf = canonical_form(&g);
            assert_eq!(g.permuted(&cf.labeling), cf.graph);
            assert_eq!(write_graph6(&cf.graph), cf.graph6);
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            assert_eq!(canonical_form(&g.permuted(&p)).graph6, cf.graph6);
        }
    }

    #[test]
    fn highly_symmetric_graphs_terminate() {
        for g in [
            SimpleGraph::complete(16).unwrap(),
            SimpleGraph::empty(16).unwrap(),
            SimpleGraph::complete_bipartite(8, 8).unwrap(),
            super::super::power(&SimpleGraph::complete(2).unwrap(), 8).unwrap(),
            super::super::power(&SimpleGraph::cycle(4).unwrap(), 4).unwrap(),
        ] {
            let cf = canonical_form(&g);
            assert_eq!(cf.graph.edge_count(), g.edge_count());
        }
    }
}
