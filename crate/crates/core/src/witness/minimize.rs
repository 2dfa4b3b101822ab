use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{WitnessCertificate, WitnessMethod};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::hom::{hom_polynomial, BlockConstraint, CompiledPolynomial, HomPolynomial};
use crate::structure::VertexPartition;

/// Rounding denominators tried, in order, when certifying a float point.
pub const CERTIFY_DENOMINATORS: [i64; 3] = [64, 16, 256];

/// Gradient descent with Armijo backtracking over directions; reported
/// points are scaled into `[-bound, bound]^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MinimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Sufficient-decrease constant of the Armijo rule.
    pub armijo: f64,
    /// Step shrink factor while backtracking.
    pub shrink: f64,
    pub initial_step: f64,
    pub bound: f64,
    /// Values below this trigger certification.
    pub threshold: f64,
    pub seed: u64,
}

impl Default for MinimizerConfig {
    fn default() -> Self {
        MinimizerConfig {
            restarts: 200,
            max_iters: 500,
            armijo: 1e-4,
            shrink: 0.5,
            initial_step: 1.0,
            bound: 1.0,
            threshold: -1e-9,
            seed: 0,
        }
    }
}

impl MinimizerConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.restarts > 0
            && self.max_iters > 0
            && self.armijo > 0.0
            && self.armijo < 1.0
            && self.shrink > 0.0
            && self.shrink < 1.0
            && self.initial_step > 0.0
            && self.bound > 0.0
            && self.bound.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid minimizer settings: {self:?}")))
        }
    }
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
    norm
}

/// Local descent from `x` on the unit sphere. The polynomial is homogeneous
/// of degree `degree`, so its sign only depends on the direction and the
/// radial part of the gradient is dropped. The final point is rescaled so its
/// largest coordinate has magnitude `bound`; returns the value there.
fn descend(c: &CompiledPolynomial, x: &mut Vec<f64>, degree: usize, cfg: &MinimizerConfig) -> f64 {
    let d = x.len();
    let mut grad = vec![0.0; d];
    let mut trial = vec![0.0; d];
    if normalize(x) == 0.0 {
        x[0] = 1.0;
    }
    let tangent = |x: &[f64], f: f64, grad: &mut [f64]| {
        for k in 0..d {
            grad[k] -= degree as f64 * f * x[k];
        }
    };
    let mut f = c.value_and_gradient(x, &mut grad);
    tangent(x, f, &mut grad);
    let gmax = grad.iter().fold(0.0f64, |a, g| a.max(g.abs()));
    let mut step = cfg.initial_step / gmax.max(1.0);
    for _ in 0..cfg.max_iters {
        let gnorm2: f64 = grad.iter().map(|g| g * g).sum();
        if gnorm2 == 0.0 {
            break;
        }
        let accepted = loop {
            for k in 0..d {
                trial[k] = x[k] - step * grad[k];
            }
            normalize(&mut trial);
            let ft = c.value(&trial);
            if ft <= f - cfg.armijo * step * gnorm2 {
                break Some(ft);
            }
            step *= cfg.shrink;
            if step < 1e-300 {
                break None;
            }
        };
        let Some(ft) = accepted else { break };
        let gain = f - ft;
        std::mem::swap(x, &mut trial);
        f = c.value_and_gradient(x, &mut grad);
        tangent(x, f, &mut grad);
        if gain <= 1e-14 * (1.0 + f.abs()) {
            break;
        }
        step /= cfg.shrink;
    }
    let top = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    x.iter_mut().for_each(|v| *v *= cfg.bound / top);
    c.value(x)
}

/// Runs the restarts, handing every local minimum to `accept` until it
/// returns true. Returns the best point seen.
fn search(
    p: &HomPolynomial,
    cfg: &MinimizerConfig,
    mut accept: impl FnMut(&[f64], f64) -> Result<bool>,
) -> Result<Option<(Vec<f64>, f64)>> {
    cfg.validate()?;
    if p.is_constant() || p.num_vars() == 0 {
        return Ok(None);
    }
    let c = p.compile();
    let mut best: Option<(Vec<f64>, f64)> = None;
    for r in 0..cfg.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(r as u64);
        let mut x: Vec<f64> = (0..p.num_vars())
            .map(|_| rng.gen_range(-cfg.bound..=cfg.bound))
            .collect();
        let f = descend(&c, &mut x, p.degree(), cfg);
        let done = accept(&x, f)?;
        if best.as_ref().is_none_or(|(_, b)| f < *b) {
            best = Some((x, f));
        }
        if done {
            break;
        }
    }
    Ok(best)
}

/// Local minimisation of `p` over directions from seeded random starts.
/// Returns the best point found when its value is below the threshold.
pub fn minimize_polynomial(p: &HomPolynomial, cfg: &MinimizerConfig) -> Option<(Vec<f64>, f64)> {
    let best = search(p, cfg, |_, f| Ok(f < cfg.threshold)).ok()??;
    (best.1 < cfg.threshold).then_some(best)
}

fn round_to(x: f64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from((x * denom as f64).round() as i64), BigInt::from(denom))
}

/// Rounds `point` (one coordinate per variable of `p`) to small rationals and
/// keeps the first rounding whose exact count is negative.
pub fn certify_candidate(
    g: &SimpleGraph,
    p: &HomPolynomial,
    point: &[f64],
    restriction: Option<&BlockConstraint>,
    method: WitnessMethod,
    seed: Option<u64>,
) -> Result<Option<WitnessCertificate>> {
    for denom in CERTIFY_DENOMINATORS {
        let values: Vec<BigRational> = point.iter().map(|&x| round_to(x, denom)).collect();
        let target = p.target_from_values(&values)?;
        if let Some(c) = WitnessCertificate::from_target(g, target, restriction.cloned(), method, seed)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn certified_search(
    g: &SimpleGraph,
    p: &HomPolynomial,
    restriction: Option<&BlockConstraint>,
    method: WitnessMethod,
    cfg: &MinimizerConfig,
) -> Result<Option<WitnessCertificate>> {
    let mut found = None;
    search(p, cfg, |x, f| {
        if f < cfg.threshold {
            found = certify_candidate(g, p, x, restriction, method, Some(cfg.seed))?;
        }
        Ok(found.is_some())
    })?;
    Ok(found)
}

/// Minimises the full symbolic `m × m` polynomial of `g` and certifies.
pub fn full_polynomial_search(
    g: &SimpleGraph,
    m: usize,
    cfg: &MinimizerConfig,
) -> Result<Option<WitnessCertificate>> {
    let p = hom_polynomial(g, m, None)?;
    certified_search(g, &p, None, WitnessMethod::MinimizerFull, cfg)
}

/// Counts only maps sending class `i` into its own block of `block_size`
/// target vertices (one vertex for singleton classes), minimises the
/// resulting polynomial over the touched entries and certifies.
pub fn restricted_witness_search(
    g: &SimpleGraph,
    partition: &VertexPartition,
    block_size: usize,
    cfg: &MinimizerConfig,
) -> Result<Option<WitnessCertificate>> {
    if block_size == 0 {
        return Err(Error::InvalidArgument("block size must be positive".into()));
    }
    let sizes: Vec<usize> = partition
        .class_sizes()
        .iter()
        .map(|&s| if s == 1 { 1 } else { block_size })
        .collect();
    let blocks = BlockConstraint::from_classes(partition.classes(), &sizes)?;
    let m = sizes.iter().sum();
    let p = hom_polynomial(g, m, Some(&blocks))?;
    certified_search(g, &p, Some(&blocks), WitnessMethod::MinimizerRestricted, cfg)
}
