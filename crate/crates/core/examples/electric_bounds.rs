//! From a starting state to a resistor network, its Kirchhoff solution, the
//! completed flip state and the resulting lower bound on the flip weight.

use num_complex::Complex64;

use oscillwalk::{
    basis_arc_state, bounds_from_power, circulation_to_flip, completed_circulation,
    flip_projection, network_from_selfflip_state, network_from_state_double, solve_network,
    BoundMode, Graph,
};

fn main() -> oscillwalk::Result<()> {
    run()
}

pub fn run() -> oscillwalk::Result<()> {
    let k3 = Graph::complete(3)?;
    let ab = basis_arc_state(&k3, 0, 1)?;
    let net = network_from_state_double(&k3, &ab);
    let sol = solve_network(&net);
    println!(
        "K3 from |01>: {} nodes, resistors {:?}",
        net.node_count, net.resistor_edges
    );
    println!(
        "  power {:.6}, Kirchhoff residual {:.1e}",
        sol.power,
        net.kirchhoff_residual(&sol)
    );

    let phi = circulation_to_flip(&k3, &completed_circulation(&k3, &ab, &sol)?)?;
    let (lower, overlap) = bounds_from_power(sol.power, BoundMode::Double);
    println!(
        "  completed flip state: |phi|^2 = {:.6}, <ab|phi> = {:.6}",
        phi.norm_sqr(),
        ab.inner(&phi)?.re
    );
    println!(
        "  alpha^2 >= {lower:.6} (exact {:.6}), overlap >= {overlap:.6}",
        flip_projection(&k3, &ab)?.0
    );

    println!("\nself-flip starts (|uv> - |vu>)/sqrt2 on edge 01:");
    for (name, g) in [
        ("K5", Graph::complete(5)?),
        ("Q3", Graph::hypercube(3)?),
        ("torus(2,4)", Graph::torus(2, 4)?),
    ] {
        let s = &(&basis_arc_state(&g, 0, 1)? - &basis_arc_state(&g, 1, 0)?)
            * Complex64::new(0.5f64.sqrt(), 0.0);
        let double = solve_network(&network_from_state_double(&g, &s)).power;
        let own = solve_network(&network_from_selfflip_state(&g, &s)?).power;
        println!(
            "  {name:<11} exact {:.6}  double-graph bound {:.6}  graph bound {:.6}",
            flip_projection(&g, &s)?.0,
            bounds_from_power(double, BoundMode::Double).0,
            bounds_from_power(own, BoundMode::SelfFlip).0,
        );
    }
    Ok(())
}
