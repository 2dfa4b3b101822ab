use serde::{Deserialize, Serialize};

use super::config::Stage;
use crate::error::{Error, Result};
use crate::graph::{
    canonical_form, canonical_graph, component_vertex_sets, induced_subgraph, mask_of, parse_graph6, SimpleGraph,
};
use crate::structure::{is_symmetric, wl_partition, SymmetryWitness};
use crate::witness::WitnessCertificate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Symmetric,
    Nonpositive,
    /// Not a minimal counterexample; says nothing about positivity.
    ExcludedNonminimal,
    Undecided,
}

impl Verdict {
    pub const ALL: [Verdict; 4] = [
        Verdict::Symmetric,
        Verdict::Nonpositive,
        Verdict::ExcludedNonminimal,
        Verdict::Undecided,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Symmetric => "SYMMETRIC",
            Verdict::Nonpositive => "NONPOSITIVE",
            Verdict::ExcludedNonminimal => "EXCLUDED_NONMINIMAL",
            Verdict::Undecided => "UNDECIDED",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    Symmetry { witness: SymmetryWitness },
    Certificate { certificate: WitnessCertificate },
    /// A proper union of colour-refinement classes spanning a non-symmetric
    /// induced subgraph.
    ClassSubset { classes: Vec<usize>, vertices: Vec<usize> },
    /// A non-symmetric component occurring an odd number of times; the
    /// graph is then positive only if that smaller graph is.
    OddComponent { vertices: Vec<usize> },
}

/// A stage that gave up because of a size cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refusal {
    pub stage: Stage,
    pub message: String,
}

/// One ledger line.
///
/// Vertex indices in `evidence` refer to the canonical graph `key`, or to
/// its subgraph induced on `subject` (in increasing order) when present.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub key: String,
    pub n: usize,
    pub edges: usize,
    pub verdict: Verdict,
    pub stage: Option<Stage>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subject: Option<Vec<usize>>,
    pub evidence: Option<Evidence>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub refusals: Vec<Refusal>,
    pub elapsed_ms: f64,
    pub seed: u64,
    pub version: String,
}

impl ClassificationRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(|e| Error::Ledger {
            line: 0,
            message: e.to_string(),
        })
    }

    /// Equality ignoring the timing field.
    pub fn same_content(&self, other: &ClassificationRecord) -> bool {
        ClassificationRecord {
            elapsed_ms: 0.0,
            ..self.clone()
        } == ClassificationRecord {
            elapsed_ms: 0.0,
            ..other.clone()
        }
    }

    /// Re-derives the graph from the key and re-checks the evidence exactly.
    pub fn verify(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Verification(msg));
        let g = parse_graph6(&self.key)?;
        if (g.n(), g.edge_count()) != (self.n, self.edges) {
            return fail("vertex or edge count does not match the key".into());
        }
        if canonical_form(&g).graph6 != self.key {
            return fail("key is not in canonical form".into());
        }
        let g = match (&self.subject, self.verdict) {
            (None, _) => g,
            (Some(s), Verdict::Nonpositive) => {
                if !is_component(&g, s) || !occurs_odd_times(&g, s) {
                    return fail("subject is not an odd-multiplicity component".into());
                }
                induced_subgraph(&g, s)?
            }
            (Some(_), v) => return fail(format!("a {v} record cannot have a subject")),
        };
        match (self.verdict, &self.evidence) {
            (Verdict::Symmetric, Some(Evidence::Symmetry { witness })) => witness.verify(&g),
            (Verdict::Nonpositive, Some(Evidence::Certificate { certificate })) => certificate.verify(&g),
            (Verdict::ExcludedNonminimal, Some(Evidence::ClassSubset { classes, vertices })) => {
                verify_class_subset(&g, classes, vertices).or_else(|e| fail(e.to_string()))
            }
            (Verdict::ExcludedNonminimal, Some(Evidence::OddComponent { vertices })) => {
                if g.is_connected() || !is_component(&g, vertices) || !occurs_odd_times(&g, vertices) {
                    return fail("not an odd-multiplicity component of a disconnected graph".into());
                }
                if is_symmetric(&induced_subgraph(&g, vertices)?).is_some() {
                    return fail("the component is symmetric".into());
                }
                Ok(())
            }
            (Verdict::Undecided, None) => Ok(()),
            (v, _) => fail(format!("evidence kind does not match verdict {v}")),
        }
    }
}

fn is_component(g: &SimpleGraph, vertices: &[usize]) -> bool {
    vertices.iter().all(|&v| v < g.n()) && component_vertex_sets(g).contains(&mask_of(vertices))
}

fn occurs_odd_times(g: &SimpleGraph, vertices: &[usize]) -> bool {
    let code = |m: u16| {
        let verts: Vec<usize> = (0..g.n()).filter(|&v| m >> v & 1 == 1).collect();
        canonical_graph(&induced_subgraph(g, &verts).expect("nonempty component"))
    };
    let target = code(mask_of(vertices));
    component_vertex_sets(g)
        .into_iter()
        .filter(|&m| m.count_ones() as usize == vertices.len() && code(m) == target)
        .count()
        % 2
        == 1
}

fn verify_class_subset(g: &SimpleGraph, classes: &[usize], vertices: &[usize]) -> Result<()> {
    let p = wl_partition(g);
    let k = p.num_classes();
    let mut sorted = classes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.is_empty() || sorted.len() >= k || sorted.iter().any(|&c| c >= k) {
        return Err(Error::Verification("classes are not a proper nonempty subset".into()));
    }
    let expected: Vec<usize> = (0..g.n()).filter(|&v| sorted.contains(&p.class_of(v))).collect();
    if expected != vertices {
        return Err(Error::Verification("vertices are not the union of the classes".into()));
    }
    if is_symmetric(&induced_subgraph(g, vertices)?).is_some() {
        return Err(Error::Verification("the class union spans a symmetric subgraph".into()));
    }
    Ok(())
}
