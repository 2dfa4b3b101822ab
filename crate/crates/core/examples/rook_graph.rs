//! The 3×3 rook's graph against its hand-made 15-vertex target, counted by
//! elimination and by an independent row-by-row transfer.

use posgraph::witness::{build_paper_witness_h, check_g1, g1_report, paper_g1};

fn main() -> posgraph::Result<()> {
    let g1 = paper_g1();
    let h = build_paper_witness_h();
    println!("G1: {} vertices, {} edges; H: {} vertices, negative entries {:?}", g1.n(), g1.edge_count(), h.m(), h.negative_entries());
    let r = g1_report()?;
    println!("elimination  {}", r.elimination);
    println!("row transfer {}", r.row_transfer);
    match check_g1() {
        Ok(c) => println!("certificate with value {}", c.hom_value),
        Err(e) => println!("no certificate: {e}"),
    }
    Ok(())
}
