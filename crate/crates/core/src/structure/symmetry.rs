use serde::{Deserialize, Serialize};

use super::partition::wl_partition;
use crate::error::{Error, Result};
use std::collections::BTreeSet;

use crate::graph::{bits, canonical_form, mask_of, parse_graph6, SimpleGraph};

/// Decomposition `V = S ∪ A ∪ B` with `sigma` swapping `A` and `B` and
/// fixing `S` pointwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryWitness {
    pub s: Vec<usize>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub sigma: Vec<usize>,
}

impl SymmetryWitness {
    /// Checks the witness against `g` directly from the definition.
    pub fn verify(&self, g: &SimpleGraph) -> Result<()> {
        let fail = |msg: String| Err(Error::Verification(msg));
        let n = g.n();
        if self.sigma.len() != n {
            return fail(format!("sigma has length {}, graph has {n} vertices", self.sigma.len()));
        }
        let mut seen = vec![0u8; n];
        for &v in self.s.iter().chain(&self.a).chain(&self.b) {
            if v >= n {
                return fail(format!("vertex {v} out of range"));
            }
            seen[v] += 1;
        }
        if let Some(v) = seen.iter().position(|&c| c != 1) {
            return fail(format!("vertex {v} is not in exactly one of S, A, B"));
        }
        for (i, &u) in self.s.iter().enumerate() {
            for &v in &self.s[i + 1..] {
                if g.has_edge(u, v) {
                    return fail(format!("S is not independent: edge {u}-{v}"));
                }
            }
            if self.sigma[u] != u {
                return fail(format!("sigma moves {u} in S"));
            }
        }
        for &u in &self.a {
            for &v in &self.b {
                if g.has_edge(u, v) {
                    return fail(format!("edge {u}-{v} between A and B"));
                }
            }
        }
        let mut image: Vec<usize> = self.a.iter().map(|&v| self.sigma[v]).collect();
        image.sort_unstable();
        let mut b = self.b.clone();
        b.sort_unstable();
        if image != b {
            return fail("sigma does not map A onto B".into());
        }
        let dom: Vec<usize> = self.s.iter().chain(&self.a).copied().collect();
        for &u in &dom {
            for &v in &dom {
                if g.has_edge(u, v) != g.has_edge(self.sigma[u], self.sigma[v]) {
                    return fail(format!("sigma is not an isomorphism at pair {u},{v}"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy)]
struct ParityUnionFind {
    parent: [u8; 16],
    parity: [u8; 16],
}

impl ParityUnionFind {
    fn new() -> Self {
        let mut parent = [0u8; 16];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        ParityUnionFind {
            parent,
            parity: [0; 16],
        }
    }

    fn find(&mut self, v: usize) -> (usize, u8) {
        let p = self.parent[v] as usize;
        if p == v {
            return (v, 0);
        }
        let (root, par) = self.find(p);
        self.parent[v] = root as u8;
        self.parity[v] ^= par;
        (root, self.parity[v])
    }

    /// Records `side(u) xor side(v) = odd`; false on contradiction.
    fn union(&mut self, u: usize, v: usize, odd: u8) -> bool {
        let (ru, pu) = self.find(u);
        let (rv, pv) = self.find(v);
        if ru == rv {
            return pu ^ pv == odd;
        }
        self.parent[ru] = rv as u8;
        self.parity[ru] = pu ^ pv ^ odd;
        true
    }
}

struct Search<'a> {
    g: &'a SimpleGraph,
    class: Vec<usize>,
    order: Vec<usize>,
    sigma: [u8; 16],
    assigned: u16,
    fixed: u16,
}

const UNSET: u8 = u8::MAX;

impl Search<'_> {
    fn consistent(&self, v: usize, w: usize) -> bool {
        // sigma(v) = w must preserve adjacency with every assigned vertex
        bits(self.assigned).all(|u| {
            let su = self.sigma[u] as usize;
            self.g.has_edge(v, u) == self.g.has_edge(w, su)
        })
    }

    fn run(&mut self, pos: usize, uf: ParityUnionFind) -> Option<ParityUnionFind> {
        let Some(&v) = self.order[pos..].iter().find(|&&v| self.assigned & (1 << v) == 0) else {
            return Some(uf);
        };
        let g = self.g;
        // v fixed
        if g.neighbors(v) & self.fixed == 0 && self.consistent(v, v) {
            self.sigma[v] = v as u8;
            self.assigned |= 1 << v;
            self.fixed |= 1 << v;
            if let Some(done) = self.run(pos + 1, uf) {
                return Some(done);
            }
            self.assigned &= !(1 << v);
            self.fixed &= !(1 << v);
            self.sigma[v] = UNSET;
        }
        // v swapped with some w
        let free = g.vertex_mask() & !self.assigned & !(1 << v) & !g.neighbors(v);
        for w in bits(free) {
            if self.class[w] != self.class[v] || !self.consistent(v, w) || !self.consistent(w, v) {
                continue;
            }
            let mut next = uf;
            let mut ok = next.union(v, w, 1);
            let moved = self.assigned & !self.fixed;
            for u in bits(g.neighbors(v) & moved) {
                ok = ok && next.union(v, u, 0);
            }
            for u in bits(g.neighbors(w) & moved) {
                ok = ok && next.union(w, u, 0);
            }
            if !ok {
                continue;
            }
            self.sigma[v] = w as u8;
            self.sigma[w] = v as u8;
            self.assigned |= (1 << v) | (1 << w);
            if let Some(done) = self.run(pos + 1, next) {
                return Some(done);
            }
            self.assigned &= !((1 << v) | (1 << w));
            self.sigma[v] = UNSET;
            self.sigma[w] = UNSET;
        }
        None
    }
}

/// Breadth-first order, so each new vertex tends to touch assigned ones.
fn bfs_order(g: &SimpleGraph) -> Vec<usize> {
    let mut order = Vec::with_capacity(g.n());
    let mut seen = 0u16;
    for s in 0..g.n() {
        if seen & (1 << s) != 0 {
            continue;
        }
        seen |= 1 << s;
        let start = order.len();
        order.push(s);
        let mut i = start;
        while i < order.len() {
            let v = order[i];
            for u in bits(g.neighbors(v) & !seen) {
                seen |= 1 << u;
                order.push(u);
            }
            i += 1;
        }
    }
    order
}

/// Searches the involutive automorphisms of `g` for one whose fixed set is
/// independent and whose moved vertices split into two sides with no edge
/// between them. Returns a verified witness when `g` is symmetric.
pub fn is_symmetric(g: &SimpleGraph) -> Option<SymmetryWitness> {
    let mut search = Search {
        g,
        class: wl_partition(g).classes().to_vec(),
        order: bfs_order(g),
        sigma: [UNSET; 16],
        assigned: 0,
        fixed: 0,
    };
    let mut uf = search.run(0, ParityUnionFind::new())?;
    let n = g.n();
    let sigma: Vec<usize> = search.sigma[..n].iter().map(|&x| x as usize).collect();
    let (mut s, mut a, mut b) = (Vec::new(), Vec::new(), Vec::new());
    for v in 0..n {
        if sigma[v] == v {
            s.push(v);
        } else if uf.find(v).1 == 0 {
            a.push(v);
        } else {
            b.push(v);
        }
    }
    let w = SymmetryWitness { s, a, b, sigma };
    debug_assert_eq!(mask_of(&w.s) & search.fixed, search.fixed);
    w.verify(g).expect("symmetry search produced an invalid witness");
    Some(w)
}

/// Largest order accepted by [`symmetric_graphs`].
pub const SYMMETRIC_ENUMERATION_MAX: usize = 10;

/// One canonical representative of each symmetric graph on `n` vertices,
/// sorted by graph6.
///
/// A symmetric graph is two copies of `G[S ∪ A]` glued along `S`, so the
/// walk runs over graphs on `S ∪ A` with `S` independent and mirrors them.
pub fn symmetric_graphs(n: usize) -> Result<Vec<SimpleGraph>> {
    if n > SYMMETRIC_ENUMERATION_MAX {
        return Err(Error::too_large(
            "symmetric graph enumeration vertices",
            n as u128,
            SYMMETRIC_ENUMERATION_MAX as u128,
        ));
    }
    SimpleGraph::empty(n)?;
    let mut seen = BTreeSet::new();
    for a in 0..=n / 2 {
        let s = n - 2 * a;
        let mirror = |v: usize| if v < s { v } else { v + a };
        let slots: Vec<(usize, usize)> = (s..s + a)
            .flat_map(|u| (0..u).map(move |v| (v, u)))
            .collect();
        for mask in 0u32..1 << slots.len() {
            let mut g = SimpleGraph::empty(n)?;
            for (i, &(u, v)) in slots.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g.add_edge(u, v);
                    g.add_edge(mirror(u), mirror(v));
                }
            }
            seen.insert(canonical_form(&g).graph6);
        }
    }
    seen.into_iter().map(|k| parse_graph6(&k)).collect()
}
