//! Load a graph from an edge-list file and run the whole pipeline on it. With
//! no argument the Petersen graph is written to a temporary file first.
//!
//! ```bash
//! cargo run --release --example custom_graph_from_edge_list -- my_graph.txt
//! ```

use num_complex::Complex64;

use oscillwalk::electric::certifies_localization;
use oscillwalk::{
    basis_arc_state, bounds_from_power, decompose, edge_disjoint_paths, measured_overlaps,
    network_from_selfflip_state, oscillation_bounds, paths_resistance_bound, resistance_distance,
    solve_network, BoundMode, Graph,
};

pub const PETERSEN: &str = "\
# outer 5-cycle, spokes, inner pentagram
0 1
1 2
2 3
3 4
4 0
0 5
1 6
2 7
3 8
4 9
5 7
7 9
9 6
6 8
8 5
";

fn main() -> oscillwalk::Result<()> {
    let path = match std::env::args().nth(1) {
        Some(p) => p.into(),
        None => {
            let p = std::env::temp_dir().join("petersen.edges");
            std::fs::write(&p, PETERSEN)?;
            p
        }
    };
    run(&path)
}

pub fn run(path: &std::path::Path) -> oscillwalk::Result<()> {
    let g = Graph::load_edge_list(path)?;
    println!(
        "{}: N={}, d={}, {} edges",
        path.display(),
        g.n(),
        g.degree(),
        g.edge_count()
    );

    let (a, b) = g.edges()[0];
    let s = &(&basis_arc_state(&g, a, b)? - &basis_arc_state(&g, b, a)?)
        * Complex64::new(0.5f64.sqrt(), 0.0);
    let dec = decompose(&g, &s)?;
    let bounds = oscillation_bounds(&dec);
    let series = measured_overlaps(&g, &s, 30)?;
    let min_odd = series
        .odd_overlaps
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    println!("self-flip on ({a},{b}): alpha^2 = {:.6}", dec.alpha_sq);
    println!(
        "  odd overlap bound {:.6}, smallest measured {min_odd:.6}",
        bounds.odd_bound
    );

    let power = solve_network(&network_from_selfflip_state(&g, &s)?).power;
    let (lower, overlap) = bounds_from_power(power, BoundMode::SelfFlip);
    let omega = resistance_distance(&g, a, b)?;
    let paths = edge_disjoint_paths(&g, a, b)?;
    println!("  electric: power {power:.6}, alpha^2 >= {lower:.6}, overlap >= {overlap:.6}");
    println!(
        "  omega {omega:.6} <= paths bound {:.6} from {} paths; certified: {}",
        paths_resistance_bound(&paths.lengths())?,
        paths.k(),
        certifies_localization(omega)
    );
    Ok(())
}
