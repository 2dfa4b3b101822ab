use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use serde::{Deserialize, Serialize};

use super::{LoopedGraph, SimpleGraph};
use crate::error::{Error, Result};

/// Symmetric matrix of exact rational edge weights; diagonal entries are loops.
///
/// Serialises as a list of rows of `p/q` strings.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<String>>", try_from = "Vec<Vec<String>>")]
pub struct WeightedGraph {
    m: usize,
    w: Vec<BigRational>,
}

impl WeightedGraph {
    pub fn zeros(m: usize) -> Self {
        WeightedGraph {
            m,
            w: vec![BigRational::zero(); m * m],
        }
    }

    /// Single vertex carrying a loop of weight `beta`.
    pub fn single_loop(beta: BigRational) -> Self {
        WeightedGraph { m: 1, w: vec![beta] }
    }

    /// All-ones weights; `loops` decides the diagonal.
    pub fn ones(m: usize, loops: bool) -> Self {
        Self::from_fn(m, |i, j| {
            if i != j || loops {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    /// Builds a matrix from `f(i, j)` for `i <= j` and mirrors it.
    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut g = Self::zeros(m);
        for i in 0..m {
            for j in i..m {
                g.set(i, j, f(i, j));
            }
        }
        g
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        let m = rows.len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidArgument("matrix is not square".into()));
        }
        for i in 0..m {
            for j in 0..m {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::InvalidArgument("matrix is not symmetric".into()));
                }
            }
        }
        Ok(Self::from_fn(m, |i, j| BigRational::from_integer(rows[i][j].into())))
    }

    /// Full row-major matrix; rejects asymmetric input.
    pub fn from_matrix(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let m = rows.len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidArgument("matrix is not square".into()));
        }
        for i in 0..m {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::InvalidArgument(format!(
                        "matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(WeightedGraph {
            m,
            w: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_simple(g: &SimpleGraph) -> Self {
        Self::from_fn(g.n(), |i, j| {
            if g.has_edge(i, j) {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn from_looped(g: &LoopedGraph) -> Self {
        Self::from_fn(g.n(), |i, j| {
            if g.has_edge(i, j) {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.w[i * self.m + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.w[i * self.m + j] = value.clone();
        self.w[j * self.m + i] = value;
    }

    pub fn rows(&self) -> Vec<Vec<BigRational>> {
        self.w.chunks(self.m.max(1)).map(|r| r.to_vec()).collect()
    }

    /// Number of nonzero entries with `i <= j`.
    pub fn support_size(&self) -> usize {
        (0..self.m)
            .flat_map(|i| (i..self.m).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.get(i, j).is_zero())
            .count()
    }

    pub fn negative_entries(&self) -> Vec<(usize, usize)> {
        (0..self.m)
            .flat_map(|i| (i..self.m).map(move |j| (i, j)))
            .filter(|&(i, j)| self.get(i, j).is_negative())
            .collect()
    }

    /// Every weight multiplied by `c`.
    pub fn scaled(&self, c: &BigRational) -> Self {
        WeightedGraph {
            m: self.m,
            w: self.w.iter().map(|x| x * c).collect(),
        }
    }

    /// Least common denominator of all entries.
    pub fn common_denominator(&self) -> BigInt {
        self.w
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// Entries scaled by the common denominator, as integers, with that denominator.
    pub fn integer_scaled(&self) -> (Vec<BigInt>, BigInt) {
        let d = self.common_denominator();
        let ints = self
            .w
            .iter()
            .map(|x| (x * BigRational::from_integer(d.clone())).to_integer())
            .collect();
        (ints, d)
    }

    /// Categorical product; vertex `(i1, i2)` is numbered `i1 * other.m() + i2`
    /// and carries weight `w1(i1, j1) * w2(i2, j2)`.
    pub fn categorical_product(&self, other: &WeightedGraph) -> WeightedGraph {
        let (m1, m2) = (self.m, other.m);
        let m = m1 * m2;
        let mut w = vec![BigRational::zero(); m * m];
        for i1 in 0..m1 {
            for i2 in 0..m2 {
                for j1 in 0..m1 {
                    for j2 in 0..m2 {
                        w[(i1 * m2 + i2) * m + (j1 * m2 + j2)] =
                            self.get(i1, j1) * other.get(i2, j2);
                    }
                }
            }
        }
        WeightedGraph { m, w }
    }

    /// The underlying simple graph, if all weights are 0/1 and there are no loops.
    pub fn to_simple(&self) -> Result<SimpleGraph> {
        let mut g = SimpleGraph::empty(self.m)?;
        for i in 0..self.m {
            for j in i..self.m {
                let x = self.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if i == j || !x.is_one() {
                    return Err(Error::InvalidArgument(
                        "weights are not those of a simple graph".into(),
                    ));
                }
                g.add_edge(i, j);
            }
        }
        Ok(g)
    }
}

impl From<WeightedGraph> for Vec<Vec<String>> {
    fn from(h: WeightedGraph) -> Self {
        (0..h.m)
            .map(|i| (0..h.m).map(|j| h.get(i, j).to_string()).collect())
            .collect()
    }
}

impl TryFrom<Vec<Vec<String>>> for WeightedGraph {
    type Error = Error;

    fn try_from(rows: Vec<Vec<String>>) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        x.trim().parse::<BigRational>().map_err(|_| {
                            Error::InvalidArgument(format!("bad rational `{x}`"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_matrix(parsed)
    }
}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "WeightedGraph(m={})", self.m)?;
        for i in 0..self.m {
            let row: Vec<String> = (0..self.m).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let h = WeightedGraph::from_fn(3, |i, j| q(i as i64 - 1, 1 + j as i64));
        let text = serde_json::to_string(&h).unwrap();
        assert!(text.contains("\"-1/3\""));
        let back: WeightedGraph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, h);
        assert!(serde_json::from_str::<WeightedGraph>(r#"[["1","2"],["3","1"]]"#).is_err());
        assert!(serde_json::from_str::<WeightedGraph>(r#"[["x"]]"#).is_err());
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn symmetric_set() {
        let mut w = WeightedGraph::zeros(3);
        w.set(0, 2, q(-1, 2));
        assert_eq!(w.get(2, 0), &q(-1, 2));
        assert_eq!(w.negative_entries(), vec![(0, 2)]);
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(WeightedGraph::from_integers(&[vec![0, 1], vec![2, 0]]).is_err());
        assert!(WeightedGraph::from_integers(&[vec![0, 1]]).is_err());
    }

    #[test]
    fn integer_scaling() {
        let w = WeightedGraph::from_fn(2, |i, j| q(1 + i as i64, 2 + j as i64));
        let (ints, d) = w.integer_scaled();
        assert_eq!(d, BigInt::from(6));
        assert_eq!(ints[0], BigInt::from(3));
    }

    #[test]
    fn product_of_simple_matches_simple_product() {
        let k2 = SimpleGraph::complete(2).unwrap();
        let p3 = SimpleGraph::path(3).unwrap();
        let wp = WeightedGraph::from_simple(&k2).categorical_product(&WeightedGraph::from_simple(&p3));
        assert_eq!(wp.to_simple().unwrap(), crate::graph::categorical_product(&k2, &p3).unwrap());
    }
}
