use std::time::Instant;

use super::config::{PipelineConfig, Stage};
use super::record::{ClassificationRecord, Evidence, Refusal, Verdict};
use crate::error::{Error, Result};
use crate::graph::{bits, canonical_form, canonical_graph, induced_subgraph, odd_multiplicity_components, SimpleGraph};
use crate::structure::{
    degree_parity_filter, edge_parity_filter, is_symmetric, subgraph_minimality_filter, wl_class_parity_check,
    wl_partition, MinimalityVerdict,
};
use crate::witness::{
    check_g1, class_parity_certificate, degree_parity_certificate, enumerate_matrix_witness, full_polynomial_search,
    odd_edge_certificate, paper_g1, restricted_witness_search, WitnessCertificate,
};

struct Outcome {
    verdict: Verdict,
    stage: Option<Stage>,
    subject: Option<Vec<usize>>,
    evidence: Option<Evidence>,
    refusals: Vec<Refusal>,
}

impl Outcome {
    fn decided(verdict: Verdict, stage: Stage, evidence: Evidence, refusals: Vec<Refusal>) -> Self {
        Outcome {
            verdict,
            stage: Some(stage),
            subject: None,
            evidence: Some(evidence),
            refusals,
        }
    }
}

fn certificate(c: WitnessCertificate) -> Evidence {
    Evidence::Certificate { certificate: c }
}

/// Classifies `g` under its canonical labeling.
///
/// Stages run in configured order and the first decisive one wins. A
/// stage refusing on a size cap is noted and skipped. A certificate for a
/// graph that is also symmetric is reported as an error, since it would
/// contradict positivity of symmetric graphs.
pub fn classify(g: &SimpleGraph, cfg: &PipelineConfig) -> Result<ClassificationRecord> {
    let start = Instant::now();
    let cf = canonical_form(g);
    let h = cf.graph;
    let out = decide(&h, cfg, true)?;
    if out.verdict == Verdict::Nonpositive && out.subject.is_none() && is_symmetric(&h).is_some() {
        return Err(Error::Verification(format!(
            "{} is symmetric but received a negative certificate",
            cf.graph6
        )));
    }
    Ok(ClassificationRecord {
        key: cf.graph6,
        n: h.n(),
        edges: h.edge_count(),
        verdict: out.verdict,
        stage: out.stage,
        subject: out.subject,
        evidence: out.evidence,
        refusals: out.refusals,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        seed: cfg.seed,
        version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

fn refusal_or<T>(r: Result<T>, stage: Stage, refusals: &mut Vec<Refusal>) -> Result<Option<T>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(e) if e.is_cap_refusal() => {
            refusals.push(Refusal {
                stage,
                message: e.to_string(),
            });
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn decide(g: &SimpleGraph, cfg: &PipelineConfig, split_components: bool) -> Result<Outcome> {
    let mut refusals = Vec::new();
    let partition = wl_partition(g);
    let mcfg = cfg.minimizer_config();
    for &stage in &cfg.stages {
        match stage {
            Stage::Components if split_components && !g.is_connected() => {
                return components(g, cfg);
            }
            Stage::Components => {}
            Stage::EdgeParity => {
                if edge_parity_filter(g).is_some() {
                    let c = odd_edge_certificate(g)?;
                    return Ok(Outcome::decided(Verdict::Nonpositive, stage, certificate(c), refusals));
                }
            }
            Stage::DegreeParity => {
                if let Some(d) = degree_parity_filter(g) {
                    let c = degree_parity_certificate(g, d)?;
                    return Ok(Outcome::decided(Verdict::Nonpositive, stage, certificate(c), refusals));
                }
            }
            Stage::Symmetry => {
                if let Some(w) = is_symmetric(g) {
                    let e = Evidence::Symmetry { witness: w };
                    return Ok(Outcome::decided(Verdict::Symmetric, stage, e, refusals));
                }
            }
            Stage::ClassParity => {
                if let Some(f) = wl_class_parity_check(g, &partition) {
                    let c = class_parity_certificate(g, partition.classes(), &f)?;
                    return Ok(Outcome::decided(Verdict::Nonpositive, stage, certificate(c), refusals));
                }
            }
            Stage::MatrixEnum => {
                let range = cfg.matrix_entries[0]..=cfg.matrix_entries[1];
                let r = enumerate_matrix_witness(g, &cfg.matrix_sizes, range);
                if let Some(Some(c)) = refusal_or(r, stage, &mut refusals)? {
                    return Ok(Outcome::decided(Verdict::Nonpositive, stage, certificate(c), refusals));
                }
            }
            Stage::Minimality => {
                let r = subgraph_minimality_filter(g, &partition);
                if let Some(MinimalityVerdict::NotMinimal { classes, vertices }) = refusal_or(r, stage, &mut refusals)? {
                    let e = Evidence::ClassSubset { classes, vertices };
                    return Ok(Outcome::decided(Verdict::ExcludedNonminimal, stage, e, refusals));
                }
            }
            Stage::FullPolynomial => {
                for &m in &cfg.poly_sizes {
                    let r = full_polynomial_search(g, m, &mcfg);
                    if let Some(Some(c)) = refusal_or(r, stage, &mut refusals)? {
                        return Ok(Outcome::decided(Verdict::Nonpositive, stage, certificate(c), refusals));
                    }
                }
            }
            Stage::Restricted => {
                let r = restricted_witness_search(g, &partition, cfg.block_size, &mcfg);
                if let Some(Some(c)) = refusal_or(r, stage, &mut refusals)? {
                    return Ok(Outcome::decided(Verdict::Nonpositive, stage, certificate(c), refusals));
                }
            }
            Stage::ManualG1 => {
                if g.n() == 9 && canonical_graph(g) == canonical_graph(&paper_g1()) {
                    match check_g1() {
                        Ok(c) => {
                            // Counts are invariant under relabeling, so the
                            // target carries over to this copy of G1.
                            if let Some(c) = WitnessCertificate::from_target(g, c.target, None, c.method, None)? {
                                return Ok(Outcome::decided(Verdict::Nonpositive, stage, certificate(c), refusals));
                            }
                        }
                        Err(Error::Verification(msg)) => refusals.push(Refusal { stage, message: msg }),
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    Ok(Outcome {
        verdict: Verdict::Undecided,
        stage: None,
        subject: None,
        evidence: None,
        refusals,
    })
}

/// A disconnected graph is positive exactly when each component occurring an
/// odd number of times is. If those are all symmetric, so is the graph;
/// otherwise it is never a minimal counterexample, and it is non-positive
/// as soon as one such component is.
fn components(g: &SimpleGraph, cfg: &PipelineConfig) -> Result<Outcome> {
    let mut first_asymmetric: Option<Vec<usize>> = None;
    let mut refusals = Vec::new();
    for mask in odd_multiplicity_components(g) {
        let vertices: Vec<usize> = bits(mask).collect();
        let sub = induced_subgraph(g, &vertices)?;
        if is_symmetric(&sub).is_some() {
            continue;
        }
        let out = decide(&sub, cfg, false)?;
        refusals.extend(out.refusals);
        if out.verdict == Verdict::Nonpositive {
            return Ok(Outcome {
                verdict: Verdict::Nonpositive,
                stage: Some(Stage::Components),
                subject: Some(vertices),
                evidence: out.evidence,
                refusals,
            });
        }
        first_asymmetric.get_or_insert(vertices);
    }
    match first_asymmetric {
        Some(vertices) => Ok(Outcome::decided(
            Verdict::ExcludedNonminimal,
            Stage::Components,
            Evidence::OddComponent { vertices },
            refusals,
        )),
        None => {
            let w = is_symmetric(g).ok_or_else(|| {
                Error::Verification("odd-multiplicity components are symmetric but the graph is not".into())
            })?;
            Ok(Outcome::decided(
                Verdict::Symmetric,
                Stage::Components,
                Evidence::Symmetry { witness: w },
                refusals,
            ))
        }
    }
}
