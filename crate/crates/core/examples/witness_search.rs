//! The three automated witness searches on a small non-symmetric graph.
//!
//!     cargo run --release --example witness_search -- [graph6] [seed]

use posgraph::graph::parse_graph6;
use posgraph::structure::wl_partition;
use posgraph::witness::{
    enumerate_matrix_witness, full_polynomial_search, restricted_witness_search, MinimizerConfig, DEFAULT_ENTRY_RANGE,
};

fn main() -> posgraph::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    // An 8-vertex graph that survives the parity, symmetry and integer
    // matrix tests.
    let g = parse_graph6(args.first().map_or("G?LT]W", String::as_str))?;
    let seed = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let cfg = MinimizerConfig {
        seed,
        ..MinimizerConfig::default()
    };
    println!("{} vertices, {} edges", g.n(), g.edge_count());

    let found = [
        ("matrix enumeration", enumerate_matrix_witness(&g, &[1, 2, 3], DEFAULT_ENTRY_RANGE)?),
        ("full 3x3 polynomial", full_polynomial_search(&g, 3, &cfg)?),
        ("restricted blocks", restricted_witness_search(&g, &wl_partition(&g), 3, &cfg)?),
    ];
    for (name, c) in found {
        match c {
            Some(c) => {
                c.verify(&g)?;
                println!("{name}: hom = {} on {} target vertices", c.hom_value, c.target.m());
                println!("{:?}", c.target);
            }
            None => println!("{name}: nothing found"),
        }
    }
    Ok(())
}
