//! Edge resistances on random regular graphs shrink with the degree; once the
//! largest one is below 1/2 every self-flip start localizes.
//!
//! ```bash
//! cargo run --release --example random_regular_localization -- 200 7
//! ```

use oscillwalk::electric::certifies_localization;
use oscillwalk::{resistance_distance, Graph};

fn main() -> oscillwalk::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(100, |s| s.parse().expect("n"));
    let seed: u64 = args.next().map_or(0, |s| s.parse().expect("seed"));
    run(n, seed)
}

pub fn run(n: usize, seed: u64) -> oscillwalk::Result<()> {
    println!("random {n}-vertex regular graphs, seed {seed}");
    println!(
        "{:>3} {:>10} {:>10} {:>12} {:>16}",
        "d", "mean", "max", "(N-1)/(dN/2)", "all certified"
    );
    for d in [3, 4, 6, 8, 12, 16] {
        if n * d % 2 == 1 {
            continue;
        }
        let g = Graph::random_regular(n, d, seed)?;
        let omegas = g
            .edges()
            .iter()
            .map(|&(a, b)| resistance_distance(&g, a, b))
            .collect::<oscillwalk::Result<Vec<f64>>>()?;
        let mean = omegas.iter().sum::<f64>() / omegas.len() as f64;
        let max = omegas.iter().cloned().fold(0.0, f64::max);
        let foster = (n - 1) as f64 / (d * n / 2) as f64;
        println!(
            "{d:>3} {mean:>10.6} {max:>10.6} {foster:>12.6} {:>16}",
            omegas.iter().all(|&w| certifies_localization(w))
        );
    }
    Ok(())
}
