//! graph6 round trips and canonical forms under relabeling.

use posgraph::graph::{canonical_form, parse_graph6, write_graph6, SimpleGraph};

fn main() -> posgraph::Result<()> {
    let petersen = parse_graph6("IheA@GUAo")?;
    println!("Petersen: {} vertices, {} edges, degrees {:?}", petersen.n(), petersen.edge_count(), petersen.degrees());
    assert_eq!(write_graph6(&petersen), "IheA@GUAo");

    let c = canonical_form(&petersen);
    let shuffled: Vec<usize> = (0..10).map(|v| (3 * v + 7) % 10).collect();
    let c2 = canonical_form(&petersen.permuted(&shuffled));
    println!("canonical {} / relabeled {}", c.graph6, c2.graph6);

    let c6 = SimpleGraph::cycle(6)?;
    println!("C6 canonical labeling {:?}", canonical_form(&c6).labeling);
    Ok(())
}
