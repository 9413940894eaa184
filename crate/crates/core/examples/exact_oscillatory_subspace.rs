//! The 1-eigenspace of `U²` computed densely from the walk matrix, compared
//! with the flip subspace plus the uniform states.

use oscillwalk::analysis::{
    basis_projector, one_eigenspace_u2, oscillatory_projector, FlipProjector,
};
use oscillwalk::{bipartite_partition, Graph};

fn main() -> oscillwalk::Result<()> {
    run()
}

pub fn run() -> oscillwalk::Result<()> {
    println!(
        "{:<10} {:>5} {:>8} {:>9} {:>9} {:>10}",
        "graph", "arcs", "ker dim", "flip dim", "uniform", "max diff"
    );
    for (name, g) in [
        ("K5", Graph::complete(5)?),
        ("K8", Graph::complete(8)?),
        ("C7", Graph::cycle(7)?),
        ("C8", Graph::cycle(8)?),
        ("Q3", Graph::hypercube(3)?),
        ("K4,4", Graph::complete_bipartite(4)?),
        ("torus(2,5)", Graph::torus(2, 5)?),
    ] {
        let basis = one_eigenspace_u2(&g)?;
        let diff = (basis_projector(&basis, g.arc_count()) - oscillatory_projector(&g)).amax();
        let uniform = if bipartite_partition(&g).is_some() {
            2
        } else {
            1
        };
        println!(
            "{name:<10} {:>5} {:>8} {:>9} {uniform:>9} {diff:>10.1e}",
            g.arc_count(),
            basis.len(),
            FlipProjector::new(&g).flip_dimension()
        );
    }
    Ok(())
}
