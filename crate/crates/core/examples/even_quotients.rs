//! Even homomorphisms into complete graphs: p(G), r̄(G), the half-image
//! property and the sign-averaging identity.

use posgraph::even::{
    check_even_selfhom, check_evenhalf, check_p2_identity, even_parameters, expectation_identity_check,
};
use posgraph::graph::SimpleGraph;

fn main() -> posgraph::Result<()> {
    let graphs = [
        ("K2", SimpleGraph::complete(2)?),
        ("P3", SimpleGraph::path(3)?),
        ("C4", SimpleGraph::cycle(4)?),
        ("K3", SimpleGraph::complete(3)?),
        ("C6", SimpleGraph::cycle(6)?),
    ];
    for (name, g) in &graphs {
        let params = even_parameters(g)?;
        let p = params.p.map_or("absent".to_string(), |p| p.to_string());
        print!("{name}: p = {p}, rbar = {}", params.rbar);
        if let Some(q) = check_evenhalf(g)? {
            print!(", even image of size {} from {:?}", q.num_classes(), q.classes());
        }
        if let Some(f) = check_even_selfhom(g)? {
            print!(", even self-map {:?}", f.map());
        }
        println!();
        if g.n() <= 5 {
            let r = check_p2_identity(g)?;
            println!("    doubled: p = {:?}, rbar = {}", r.p, r.rbar);
        }
        if g.n() <= 4 {
            let e = expectation_identity_check(g, 3)?;
            println!("    mean hom over ±1 weightings of K3 = {}, even maps = {}", e.average, e.even_maps);
        }
    }
    Ok(())
}
