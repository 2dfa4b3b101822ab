//! The staged classifier, its JSON-lines ledger, and reports over ledgers.
//!
//! Cheap parity tests run first, then the symmetry decision, exhaustive
//! small-matrix enumeration, the class-subset minimality test and finally the
//! two polynomial searches. Each ledger line is a self-contained
//! [`ClassificationRecord`] whose evidence can be re-checked exactly.

mod classify;
mod config;
mod ledger;
mod record;
mod report;

pub use classify::classify;
pub use config::{PipelineConfig, Stage};
pub use ledger::{
    graph_of, read_ledger, run_pipeline, verify_ledger, InputSource, LedgerCheck, LedgerContents, MalformedLine,
    Summary,
};
pub use record::{ClassificationRecord, Evidence, Refusal, Verdict};
pub use report::{known_survivors, report, Report, SurvivorCheck};
