//! Writes `fixtures/graphs_nN.g6` for N = 2..=MAX (default 8) by repeated
//! vertex extension from the exhaustive 7-vertex list.
//!
//!     cargo run --release --example make_fixtures -- [MAX] [DIR]

use std::path::PathBuf;

use posgraph::graph::{enumerate_graphs, extend_by_vertex, write_graph6_file, MAX_SWEEP_VERTICES};

fn main() -> posgraph::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let max: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(8);
    let dir = PathBuf::from(args.get(1).map_or("fixtures", String::as_str));
    std::fs::create_dir_all(&dir)?;
    let mut graphs = Vec::new();
    for n in 2..=max {
        graphs = if n <= MAX_SWEEP_VERTICES {
            enumerate_graphs(n)?
        } else {
            extend_by_vertex(&graphs)?
        };
        let path = dir.join(format!("graphs_n{n}.g6"));
        write_graph6_file(&path, &graphs)?;
        println!("{}: {} graphs", path.display(), graphs.len());
    }
    Ok(())
}
