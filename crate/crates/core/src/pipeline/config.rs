use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::witness::MinimizerConfig;

/// One step of the classifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Components,
    EdgeParity,
    DegreeParity,
    Symmetry,
    ClassParity,
    MatrixEnum,
    Minimality,
    FullPolynomial,
    Restricted,
    /// The hand-made target for the 9-vertex rook's graph.
    ManualG1,
}

impl Stage {
    pub const DEFAULT_ORDER: [Stage; 9] = [
        Stage::Components,
        Stage::EdgeParity,
        Stage::DegreeParity,
        Stage::Symmetry,
        Stage::ClassParity,
        Stage::MatrixEnum,
        Stage::Minimality,
        Stage::FullPolynomial,
        Stage::Restricted,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Components => "components",
            Stage::EdgeParity => "edge-parity",
            Stage::DegreeParity => "degree-parity",
            Stage::Symmetry => "symmetry",
            Stage::ClassParity => "class-parity",
            Stage::MatrixEnum => "matrix-enum",
            Stage::Minimality => "minimality",
            Stage::FullPolynomial => "full-polynomial",
            Stage::Restricted => "restricted",
            Stage::ManualG1 => "manual-g1",
        }
    }
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifier settings, read from TOML. Every key is optional.
///
/// ```toml
/// stages = ["components", "edge-parity", "symmetry", "matrix-enum"]
/// matrix_sizes = [1, 2]
/// matrix_entries = [-1, 1]
/// poly_sizes = [3]
/// workers = 4
/// seed = 7
///
/// [minimizer]
/// restarts = 50
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    /// Stages to run, in order.
    pub stages: Vec<Stage>,
    pub matrix_sizes: Vec<usize>,
    /// Inclusive integer range for matrix entries.
    pub matrix_entries: [i64; 2],
    /// Sides of the full symbolic matrices, tried in order.
    pub poly_sizes: Vec<usize>,
    /// Target vertices per non-singleton class in the restricted search.
    pub block_size: usize,
    pub minimizer: MinimizerConfig,
    pub workers: usize,
    /// Seeds every minimizer run; overrides `minimizer.seed`.
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            stages: Stage::DEFAULT_ORDER.to_vec(),
            matrix_sizes: vec![1, 2, 3],
            matrix_entries: [-2, 2],
            poly_sizes: vec![3, 4],
            block_size: 3,
            minimizer: MinimizerConfig::default(),
            workers: 1,
            seed: 0,
        }
    }
}

impl PipelineConfig {
    /// Default stages followed by the manual witness stage.
    pub fn extended() -> Self {
        let mut cfg = PipelineConfig::default();
        cfg.stages.push(Stage::ManualG1);
        cfg
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: PipelineConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.stages.is_empty() {
            return bad("at least one stage must be enabled".into());
        }
        let mut seen = self.stages.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.stages.len() {
            return bad("a stage is listed twice".into());
        }
        if self.matrix_sizes.iter().any(|&m| m == 0 || m > 4) {
            return bad("matrix sizes must lie in 1..=4".into());
        }
        if self.matrix_entries[0] > self.matrix_entries[1] {
            return bad("matrix_entries must be [low, high] with low <= high".into());
        }
        if self.poly_sizes.iter().any(|&m| m == 0 || m > 5) {
            return bad("poly_sizes must lie in 1..=5".into());
        }
        if self.block_size == 0 {
            return bad("block_size must be positive".into());
        }
        if self.workers == 0 {
            return bad("workers must be positive".into());
        }
        self.minimizer.validate()
    }

    /// The minimizer settings actually used, with the pipeline seed.
    pub fn minimizer_config(&self) -> MinimizerConfig {
        MinimizerConfig {
            seed: self.seed,
            ..self.minimizer.clone()
        }
    }
}
