//! Deciding symmetry and printing the S / A / B decomposition.

use posgraph::graph::{blow_up, disjoint_union, parse_graph6, SimpleGraph};
use posgraph::structure::{classify_tree, is_symmetric, wl_partition, TreeVerdict};

fn main() -> posgraph::Result<()> {
    let p3 = SimpleGraph::path(3)?;
    let graphs = vec![
        ("C4", SimpleGraph::cycle(4)?),
        ("C6", SimpleGraph::cycle(6)?),
        ("K3 + K3", disjoint_union(&SimpleGraph::complete(3)?, &SimpleGraph::complete(3)?)?),
        ("P3 blown up", blow_up(&p3, 2)?),
        ("K3", SimpleGraph::complete(3)?),
        ("DFw", parse_graph6("DFw")?),
    ];
    for (name, g) in &graphs {
        match is_symmetric(g) {
            Some(w) => {
                w.verify(g)?;
                println!("{name:<12} symmetric  S={:?} A={:?} B={:?}", w.s, w.a, w.b);
            }
            None => println!("{name:<12} not symmetric, {} WL classes", wl_partition(g).num_classes()),
        }
    }

    let spider = SimpleGraph::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])?;
    match classify_tree(&spider)? {
        TreeVerdict::Symmetric(w) => println!("spider: symmetric, sigma = {:?}", w.sigma),
        TreeVerdict::Nonpositive(f) => println!("spider: classes {:?} span {} edges", f.classes, f.edges),
    }
    Ok(())
}
