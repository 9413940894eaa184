//! Flip / uniform / remainder split of a few starting states and the overlap
//! bounds that follow from it, checked against a short simulation.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use oscillwalk::walk::random_state;
use oscillwalk::{
    basis_arc_state, decompose, measured_overlaps, oscillation_bounds, uniform_state, ArcState,
    Graph,
};

fn report(label: &str, g: &Graph, psi: &ArcState) -> oscillwalk::Result<()> {
    let dec = decompose(g, psi)?;
    let bounds = oscillation_bounds(&dec);
    let series = measured_overlaps(g, psi, 20)?;
    let min_even = series
        .even_overlaps
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let min_odd = series
        .odd_overlaps
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    println!(
        "{label:<22} {:>8.5} {:>8.5} {:>8.5} | even {:>8.5} >= {:>8.5} | odd {:>8.5} >= {:>8.5}",
        dec.alpha_sq,
        dec.beta_sq,
        dec.gamma_sq,
        min_even,
        bounds.even_bound,
        min_odd,
        bounds.odd_bound
    );
    Ok(())
}

fn main() -> oscillwalk::Result<()> {
    run()
}

pub fn run() -> oscillwalk::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    println!(
        "{:<22} {:>8} {:>8} {:>8}   (min over t <= 20)",
        "state", "alpha^2", "beta^2", "gamma^2"
    );
    for (name, g) in [("K6", Graph::complete(6)?), ("Q3", Graph::hypercube(3)?)] {
        let ab = basis_arc_state(&g, 0, 1)?;
        let ba = basis_arc_state(&g, 1, 0)?;
        let selfflip = &(&ab - &ba) * Complex64::new(0.5f64.sqrt(), 0.0);
        let all: Vec<usize> = (0..g.n()).collect();

        report(&format!("{name} |01>"), &g, &ab)?;
        report(&format!("{name} self-flip 01"), &g, &selfflip)?;
        report(&format!("{name} uniform"), &g, &uniform_state(&g, &all)?)?;
        report(&format!("{name} random"), &g, &random_state(&g, &mut rng))?;
    }
    Ok(())
}
