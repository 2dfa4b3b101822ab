//! Exact homomorphism numbers and densities, and the product law for
//! disjoint unions.

use num_rational::BigRational;
use posgraph::graph::{SimpleGraph, WeightedGraph};
use posgraph::hom::{hom_count, hom_count_brute_force, product_law_check, t_density};

fn main() -> posgraph::Result<()> {
    let c4 = SimpleGraph::cycle(4)?;
    let k3 = SimpleGraph::complete(3)?;
    let h = WeightedGraph::from_integers(&[vec![1, -1, 2], vec![-1, 0, 1], vec![2, 1, -1]])?;

    for (name, g) in [("C4", &c4), ("K3", &k3)] {
        let dp = hom_count(g, &h)?;
        let brute = hom_count_brute_force(g, &h)?;
        println!("hom({name}, H) = {dp}  (brute force {brute})  t = {}", t_density(g, &h)?);
    }

    let r = product_law_check(&c4, &k3, &h)?;
    println!("t(C4 + K3, H) = {} = {}", r.union_density, r.product_of_densities);

    // A single looped vertex of weight -1 detects an odd edge count.
    let minus = WeightedGraph::single_loop(BigRational::from_integer((-1).into()));
    println!("hom(K3, loop(-1)) = {}", hom_count(&k3, &minus)?);
    Ok(())
}
