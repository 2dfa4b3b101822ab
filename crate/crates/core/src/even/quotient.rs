use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, SimpleGraph};
use crate::structure::SymmetryWitness;

/// Largest graph whose independent partitions are enumerated.
pub const QUOTIENT_MAX_VERTICES: usize = 10;

/// A half-integer kept as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInteger(i64);

impl HalfInteger {
    pub fn from_doubled(doubled: i64) -> Self {
        HalfInteger(doubled)
    }

    pub fn from_integer(x: i64) -> Self {
        HalfInteger(2 * x)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl std::ops::Add for HalfInteger {
    type Output = HalfInteger;
    fn add(self, rhs: HalfInteger) -> HalfInteger {
        HalfInteger(self.0 + rhs.0)
    }
}

impl std::ops::Mul<HalfInteger> for i64 {
    type Output = HalfInteger;
    fn mul(self, rhs: HalfInteger) -> HalfInteger {
        HalfInteger(self * rhs.0)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// A homomorphism into a complete graph, up to relabeling the target: a
/// partition of `V(G)` into independent classes, numbered by first vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientMap {
    classes: Vec<usize>,
    k: usize,
    /// Nonzero edge multiplicities between classes `i < j`, sorted.
    multiplicities: Vec<((usize, usize), usize)>,
}

/// The `f`-odd edges and target vertices of a quotient, and `r(f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddnessProfile {
    pub odd_edges: Vec<(usize, usize)>,
    pub odd_vertices: Vec<usize>,
    pub r_value: HalfInteger,
}

impl QuotientMap {
    /// Builds the quotient of `g` given by `labels`; fails if some class
    /// contains an edge.
    pub fn from_labels(g: &SimpleGraph, labels: &[usize]) -> Result<Self> {
        if labels.len() != g.n() {
            return Err(Error::DimensionMismatch {
                expected: g.n(),
                got: labels.len(),
            });
        }
        let mut renumber: Vec<Option<usize>> = vec![None; labels.iter().max().map_or(0, |&m| m + 1)];
        let mut k = 0;
        let classes: Vec<usize> = labels
            .iter()
            .map(|&l| {
                *renumber[l].get_or_insert_with(|| {
                    k += 1;
                    k - 1
                })
            })
            .collect();
        for (u, v) in g.edges() {
            if classes[u] == classes[v] {
                return Err(Error::InvalidArgument(format!(
                    "vertices {u} and {v} are adjacent but share a class"
                )));
            }
        }
        Ok(Self::build(g, classes, k))
    }

    fn build(g: &SimpleGraph, classes: Vec<usize>, k: usize) -> Self {
        let mut counts = vec![0usize; k * k];
        for (u, v) in g.edges() {
            let (a, b) = (classes[u].min(classes[v]), classes[u].max(classes[v]));
            counts[a * k + b] += 1;
        }
        let multiplicities = (0..k)
            .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
            .filter(|&(a, b)| counts[a * k + b] > 0)
            .map(|(a, b)| ((a, b), counts[a * k + b]))
            .collect();
        QuotientMap {
            classes,
            k,
            multiplicities,
        }
    }

    /// Every vertex in its own class.
    pub fn identity(g: &SimpleGraph) -> Self {
        Self::build(g, (0..g.n()).collect(), g.n())
    }

    /// Identifies each `a` in `A` with `sigma(a)`; every other vertex of
    /// `S` stays alone. Edges come in mirror pairs, so this is even.
    pub fn folding(g: &SimpleGraph, w: &SymmetryWitness) -> Result<Self> {
        w.verify(g)?;
        let labels: Vec<usize> = (0..g.n()).map(|v| v.min(w.sigma[v])).collect();
        Self::from_labels(g, &labels)
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.k
    }

    pub fn num_vertices(&self) -> usize {
        self.classes.len()
    }

    pub fn multiplicities(&self) -> &[((usize, usize), usize)] {
        &self.multiplicities
    }

    pub fn class_masks(&self) -> Vec<u16> {
        let mut masks = vec![0u16; self.k];
        for (v, &c) in self.classes.iter().enumerate() {
            masks[c] |= 1 << v;
        }
        masks
    }

    /// `|V(G)| - |f(V(G))|`.
    pub fn image_deficiency(&self) -> usize {
        self.num_vertices() - self.k
    }

    pub fn is_even(&self) -> bool {
        self.multiplicities.iter().all(|&(_, m)| m % 2 == 0)
    }

    pub fn oddness(&self) -> OddnessProfile {
        let odd_edges: Vec<(usize, usize)> = self
            .multiplicities
            .iter()
            .filter(|&&(_, m)| m % 2 == 1)
            .map(|&(e, _)| e)
            .collect();
        let mut odd = vec![false; self.k];
        for &(a, b) in &odd_edges {
            odd[a] = true;
            odd[b] = true;
        }
        let odd_vertices: Vec<usize> = (0..self.k).filter(|&c| odd[c]).collect();
        let r = 2 * self.image_deficiency() as i64 + odd_vertices.len() as i64;
        OddnessProfile {
            odd_edges,
            odd_vertices,
            r_value: HalfInteger::from_doubled(r),
        }
    }

    pub fn r_value(&self) -> HalfInteger {
        self.oddness().r_value
    }

    /// The simple graph on the classes, adjacent when some edge joins them.
    pub fn quotient_graph(&self) -> SimpleGraph {
        let edges: Vec<(usize, usize)> = self.multiplicities.iter().map(|&(e, _)| e).collect();
        SimpleGraph::from_edges(self.k, &edges).expect("quotient has at most as many vertices as g")
    }

    /// The quotient induced on `vertices` (in that order) of `g`.
    pub fn restrict(&self, g: &SimpleGraph, vertices: &[usize]) -> Result<QuotientMap> {
        let sub = induced_subgraph(g, vertices)?;
        let labels: Vec<usize> = vertices.iter().map(|&v| self.classes[v]).collect();
        QuotientMap::from_labels(&sub, &labels)
    }
}

/// Lazily walks the partitions of `V(G)` into independent sets, in
/// restricted-growth order.
pub struct Quotients<'a> {
    g: &'a SimpleGraph,
    labels: Vec<usize>,
    masks: Vec<u16>,
    next_class: Vec<usize>,
    pos: usize,
    finished: bool,
}

impl Quotients<'_> {
    fn undo(&mut self, v: usize) {
        let c = self.labels[v];
        self.masks[c] &= !(1 << v);
        if self.masks[c] == 0 {
            self.masks.pop();
        }
    }
}

impl Iterator for Quotients<'_> {
    type Item = QuotientMap;

    fn next(&mut self) -> Option<QuotientMap> {
        let n = self.g.n();
        if self.finished {
            return None;
        }
        loop {
            if self.pos == n {
                let q = QuotientMap::build(self.g, self.labels.clone(), self.masks.len());
                self.pos = n - 1;
                self.undo(n - 1);
                return Some(q);
            }
            let v = self.pos;
            let k = self.masks.len();
            let row = self.g.neighbors(v);
            let found = (self.next_class[v]..=k).find(|&c| c == k || self.masks[c] & row == 0);
            match found {
                Some(c) => {
                    self.labels[v] = c;
                    if c == k {
                        self.masks.push(1 << v);
                    } else {
                        self.masks[c] |= 1 << v;
                    }
                    self.next_class[v] = c + 1;
                    self.pos += 1;
                    if self.pos < n {
                        self.next_class[self.pos] = 0;
                    }
                }
                None if v == 0 => {
                    self.finished = true;
                    return None;
                }
                None => {
                    self.pos -= 1;
                    self.undo(self.pos);
                }
            }
        }
    }
}

/// Every partition of `V(G)` into independent classes, each exactly once.
pub fn enumerate_quotients(g: &SimpleGraph) -> Result<Quotients<'_>> {
    if g.n() > QUOTIENT_MAX_VERTICES {
        return Err(Error::too_large(
            "quotient enumeration vertices",
            g.n() as u128,
            QUOTIENT_MAX_VERTICES as u128,
        ));
    }
    Ok(Quotients {
        g,
        labels: vec![0; g.n()],
        masks: Vec::new(),
        next_class: vec![0; g.n()],
        pos: 0,
        finished: false,
    })
}
