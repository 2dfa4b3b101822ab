//! Symbolic homomorphism polynomials.
//!
//! Variables are the entries `x_ij` (`i <= j`, loops allowed) of a symbolic
//! symmetric target matrix. The polynomial is built by enumerating the
//! admissible maps and adding one to the coefficient of the monomial
//! `Π_{ab ∈ E(G)} x_{φ(a)φ(b)}` for each of them.
//!
//! Plain-text form: the first line lists the variables as space-separated
//! `i,j` pairs (0-based); every further line is one term, `coeff e1 e2 ...`.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::BlockConstraint;
use crate::error::{Error, Result};
use crate::graph::{bits, SimpleGraph, WeightedGraph};

/// Default cap on the number of maps enumerated for one polynomial.
pub const POLYNOMIAL_MAP_CAP: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPolynomial {
    target_size: usize,
    vars: Vec<(usize, usize)>,
    terms: Vec<(Vec<u8>, i64)>,
}

struct Builder<'a> {
    earlier: Vec<Vec<usize>>,
    domains: &'a [Vec<usize>],
    pair_id: Vec<usize>,
    m: usize,
    vars: Vec<(usize, usize)>,
    phi: Vec<usize>,
    exps: Vec<u8>,
    acc: HashMap<Vec<u8>, i64>,
    grow: bool,
}

impl Builder<'_> {
    fn var(&mut self, a: usize, b: usize) -> usize {
        let (i, j) = if a <= b { (a, b) } else { (b, a) };
        let slot = i * self.m + j;
        if self.pair_id[slot] == usize::MAX {
            debug_assert!(self.grow);
            self.pair_id[slot] = self.vars.len();
            self.vars.push((i, j));
            self.exps.push(0);
            for key in self.acc.keys() {
                debug_assert!(key.len() < self.exps.len());
            }
        }
        self.pair_id[slot]
    }

    fn descend(&mut self, v: usize) {
        if v == self.phi.len() {
            if let Some(c) = self.acc.get_mut(&self.exps) {
                *c += 1;
            } else {
                self.acc.insert(self.exps.clone(), 1);
            }
            return;
        }
        for ti in 0..self.domains[v].len() {
            let t = self.domains[v][ti];
            self.phi[v] = t;
            let mut used = Vec::with_capacity(self.earlier[v].len());
            for k in 0..self.earlier[v].len() {
                let u = self.earlier[v][k];
                let id = self.var(self.phi[u], t);
                self.exps[id] += 1;
                used.push(id);
            }
            self.descend(v + 1);
            for id in used {
                self.exps[id] -= 1;
            }
        }
    }
}

/// Homomorphism polynomial of `g` for a symbolic `m × m` target, optionally
/// counting only maps allowed by `blocks`.
///
/// Unrestricted polynomials carry every variable `x_ij`, `0 <= i <= j < m`;
/// restricted ones carry only the entries some admissible map touches.
pub fn hom_polynomial(
    g: &SimpleGraph,
    m: usize,
    blocks: Option<&BlockConstraint>,
) -> Result<HomPolynomial> {
    if m == 0 {
        return Err(Error::InvalidArgument("target size must be positive".into()));
    }
    let full: Vec<Vec<usize>>;
    let domains: &[Vec<usize>] = match blocks {
        Some(b) => {
            b.check_against(g, m)?;
            b.allowed()
        }
        None => {
            full = vec![(0..m).collect(); g.n()];
            &full
        }
    };
    let maps = domains
        .iter()
        .map(|d| d.len() as u128)
        .try_fold(1u128, |a, b| a.checked_mul(b))
        .unwrap_or(u128::MAX);
    if maps > POLYNOMIAL_MAP_CAP {
        return Err(Error::too_large("polynomial map count", maps, POLYNOMIAL_MAP_CAP));
    }
    let n = g.n();
    let earlier: Vec<Vec<usize>> = (0..n)
        .map(|v| bits(g.neighbors(v)).filter(|&u| u < v).collect())
        .collect();
    let mut b = Builder {
        earlier,
        domains,
        pair_id: vec![usize::MAX; m * m],
        m,
        vars: Vec::new(),
        phi: vec![0; n],
        exps: Vec::new(),
        acc: HashMap::new(),
        grow: blocks.is_some(),
    };
    if blocks.is_none() {
        for i in 0..m {
            for j in i..m {
                b.pair_id[i * m + j] = b.vars.len();
                b.vars.push((i, j));
            }
        }
        b.exps = vec![0; b.vars.len()];
    }
    b.descend(0);

    // Keys recorded before a variable was allocated are shorter; pad them.
    let nvars = b.vars.len();
    let mut order: Vec<usize> = (0..nvars).collect();
    order.sort_by_key(|&k| b.vars[k]);
    let vars: Vec<(usize, usize)> = order.iter().map(|&k| b.vars[k]).collect();
    let mut merged: HashMap<Vec<u8>, i64> = HashMap::new();
    for (key, c) in b.acc {
        let e: Vec<u8> = order.iter().map(|&k| key.get(k).copied().unwrap_or(0)).collect();
        *merged.entry(e).or_insert(0) += c;
    }
    let mut terms: Vec<(Vec<u8>, i64)> = merged.into_iter().filter(|(_, c)| *c != 0).collect();
    terms.sort();
    Ok(HomPolynomial {
        target_size: m,
        vars,
        terms,
    })
}

impl HomPolynomial {
    pub fn vars(&self) -> &[(usize, usize)] {
        &self.vars
    }

    pub fn terms(&self) -> &[(Vec<u8>, i64)] {
        &self.terms
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.iter().all(|&x| x == 0))
    }

    /// Total degree of the first term (all terms share it).
    pub fn degree(&self) -> usize {
        self.terms
            .first()
            .map_or(0, |(e, _)| e.iter().map(|&x| x as usize).sum())
    }

    /// Exact value at a symmetric rational matrix of matching size.
    pub fn evaluate(&self, h: &WeightedGraph) -> Result<BigRational> {
        if h.m() != self.target_size {
            return Err(Error::DimensionMismatch {
                expected: self.target_size,
                got: h.m(),
            });
        }
        let vals: Vec<&BigRational> = self.vars.iter().map(|&(i, j)| h.get(i, j)).collect();
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(BigInt::from(*c));
            for (k, &x) in e.iter().enumerate() {
                if x > 0 {
                    t *= num_traits::pow(vals[k].clone(), x as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Exact value with integer entries, `None` on i128 overflow.
    pub fn evaluate_i128(&self, point: &[i64]) -> Option<i128> {
        let mut total: i128 = 0;
        for (e, c) in &self.terms {
            let mut t = *c as i128;
            for (k, &x) in e.iter().enumerate() {
                if x > 0 {
                    t = t.checked_mul((point[k] as i128).checked_pow(x as u32)?)?;
                }
            }
            total = total.checked_add(t)?;
        }
        Some(total)
    }

    pub fn compile(&self) -> CompiledPolynomial {
        let mut coeffs = Vec::with_capacity(self.terms.len());
        let mut offsets = vec![0];
        let mut factors = Vec::new();
        for (e, c) in &self.terms {
            coeffs.push(*c as f64);
            for (k, &x) in e.iter().enumerate() {
                if x > 0 {
                    factors.push((k as u32, x as i32));
                }
            }
            offsets.push(factors.len());
        }
        CompiledPolynomial {
            nvars: self.vars.len(),
            coeffs,
            offsets,
            factors,
        }
    }

    pub fn value_f64(&self, point: &[f64]) -> Result<f64> {
        self.check_point(point)?;
        Ok(self.compile().value(point))
    }

    pub fn gradient(&self, point: &[f64]) -> Result<Vec<f64>> {
        self.check_point(point)?;
        let mut grad = vec![0.0; point.len()];
        self.compile().value_and_gradient(point, &mut grad);
        Ok(grad)
    }

    fn check_point(&self, point: &[f64]) -> Result<()> {
        if point.len() != self.vars.len() {
            return Err(Error::DimensionMismatch {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        Ok(())
    }

    /// Weighted target whose entries at the polynomial's variables are
    /// `values`; other entries are zero.
    pub fn target_from_values(&self, values: &[BigRational]) -> Result<WeightedGraph> {
        if values.len() != self.vars.len() {
            return Err(Error::DimensionMismatch {
                expected: self.vars.len(),
                got: values.len(),
            });
        }
        let mut h = WeightedGraph::zeros(self.target_size);
        for (&(i, j), v) in self.vars.iter().zip(values) {
            h.set(i, j, v.clone());
        }
        Ok(h)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let header: Vec<String> = self.vars.iter().map(|(i, j)| format!("{i},{j}")).collect();
        s.push_str(&header.join(" "));
        s.push('\n');
        for (e, c) in &self.terms {
            write!(s, "{c}").unwrap();
            for x in e {
                write!(s, " {x}").unwrap();
            }
            s.push('\n');
        }
        s
    }

    /// Parses [`HomPolynomial::to_text`] output. The target size is taken as
    /// one more than the largest variable index.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidArgument("missing variable header".into()))?;
        let mut vars = Vec::new();
        for tok in header.split_whitespace() {
            let (i, j) = tok
                .split_once(',')
                .ok_or_else(|| Error::InvalidArgument(format!("bad variable `{tok}`")))?;
            let parse = |x: &str| {
                x.parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad variable `{tok}`")))
            };
            vars.push((parse(i)?, parse(j)?));
        }
        let mut terms = Vec::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let mut it = line.split_whitespace();
            let c: i64 = it
                .next()
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| Error::InvalidArgument(format!("bad term `{line}`")))?;
            let e: Vec<u8> = it
                .map(|x| x.parse::<u8>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidArgument(format!("bad exponent in `{line}`")))?;
            if e.len() != vars.len() {
                return Err(Error::DimensionMismatch {
                    expected: vars.len(),
                    got: e.len(),
                });
            }
            terms.push((e, c));
        }
        let target_size = vars.iter().map(|&(_, j)| j + 1).max().unwrap_or(0);
        Ok(HomPolynomial {
            target_size,
            vars,
            terms,
        })
    }
}

/// Flattened polynomial for fast floating-point evaluation.
#[derive(Clone, Debug)]
pub struct CompiledPolynomial {
    nvars: usize,
    coeffs: Vec<f64>,
    offsets: Vec<usize>,
    factors: Vec<(u32, i32)>,
}

impl CompiledPolynomial {
    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        let mut total = 0.0;
        for (t, &c) in self.coeffs.iter().enumerate() {
            let mut p = c;
            for &(k, e) in &self.factors[self.offsets[t]..self.offsets[t + 1]] {
                p *= x[k as usize].powi(e);
            }
            total += p;
        }
        total
    }

    /// Returns the value and overwrites `grad` with the gradient.
    pub fn value_and_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        grad.iter_mut().for_each(|g| *g = 0.0);
        let mut total = 0.0;
        let mut vals: Vec<f64> = Vec::new();
        let mut suffix: Vec<f64> = Vec::new();
        for (t, &c) in self.coeffs.iter().enumerate() {
            let fs = &self.factors[self.offsets[t]..self.offsets[t + 1]];
            vals.clear();
            vals.extend(fs.iter().map(|&(k, e)| x[k as usize].powi(e)));
            suffix.clear();
            suffix.resize(fs.len() + 1, 1.0);
            for i in (0..fs.len()).rev() {
                suffix[i] = suffix[i + 1] * vals[i];
            }
            total += c * suffix[0];
            let mut prefix = c;
            for (i, &(k, e)) in fs.iter().enumerate() {
                let xi = x[k as usize];
                let d = e as f64 * xi.powi(e - 1);
                grad[k as usize] += prefix * d * suffix[i + 1];
                prefix *= vals[i];
            }
        }
        total
    }
}
