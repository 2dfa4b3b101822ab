//! Runs the staged classifier over all graphs on a few vertices, writes a
//! ledger to a temporary directory, re-verifies it and prints the report.
//!
//!     cargo run --release --example classify -- [n]

use posgraph::pipeline::{report, run_pipeline, verify_ledger, InputSource, PipelineConfig};

fn main() -> posgraph::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let dir = std::env::temp_dir().join(format!("posgraph-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let ledger = dir.join("ledger.jsonl");

    let summary = run_pipeline(&InputSource::AllGraphs(n), &PipelineConfig::default(), &ledger)?;
    println!("classified {} graphs on {n} vertices", summary.classified);
    let check = verify_ledger(&ledger)?;
    println!("verify: {} records, {} failures", check.records, check.failures.len());
    print!("{}", report(&ledger)?.to_text());

    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
