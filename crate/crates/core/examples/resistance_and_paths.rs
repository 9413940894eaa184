//! Resistance distance, edge-disjoint paths and the localization verdict for
//! adjacent pairs.

use oscillwalk::electric::certifies_localization;
use oscillwalk::{edge_disjoint_paths, paths_resistance_bound, resistance_distance, Graph};

fn main() -> oscillwalk::Result<()> {
    run()
}

pub fn run() -> oscillwalk::Result<()> {
    println!(
        "{:<12} {:>9} {:>3} {:>12} {:>11}  verdict",
        "graph", "omega", "k", "lengths", "paths bound"
    );
    let mut graphs = vec![
        ("Q3".to_string(), Graph::hypercube(3)?),
        ("Q5".into(), Graph::hypercube(5)?),
    ];
    for n in [4, 5, 8, 16] {
        graphs.push((format!("K{n}"), Graph::complete(n)?));
    }
    graphs.push(("C10".into(), Graph::cycle(10)?));
    graphs.push(("torus(3,4)".into(), Graph::torus(3, 4)?));

    for (name, g) in graphs {
        let (a, b) = g.edges()[0];
        let omega = resistance_distance(&g, a, b)?;
        let paths = edge_disjoint_paths(&g, a, b)?;
        let bound = paths_resistance_bound(&paths.lengths())?;
        println!(
            "{name:<12} {omega:>9.6} {:>3} {:>12} {bound:>11.6}  {}",
            paths.k(),
            format!("{:?}", paths.lengths()),
            if certifies_localization(omega) {
                "certified"
            } else {
                "-"
            }
        );
    }
    Ok(())
}
