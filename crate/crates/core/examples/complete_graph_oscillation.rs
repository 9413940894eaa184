//! Walk on the complete graph from a single arc `|ab⟩`: full simulation next
//! to the closed forms, then the 7x7 class model.
//!
//! ```bash
//! cargo run --release --example complete_graph_oscillation -- 100 12
//! ```

use oscillwalk::complete::{amp_ab, amp_ba, seven_dim_unitary};
use oscillwalk::{basis_arc_state, walk_step, Graph};

fn main() -> oscillwalk::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(100, |s| s.parse().expect("N"));
    let t_max: usize = args.next().map_or(12, |s| s.parse().expect("t_max"));
    run(n, t_max)
}

pub fn run(n: usize, t_max: usize) -> oscillwalk::Result<()> {
    let g = Graph::complete(n)?;
    let (ab, ba) = (g.arc(0, 1).unwrap(), g.arc(1, 0).unwrap());
    let mut psi = basis_arc_state(&g, 0, 1)?;

    println!("K_{n}: {} arcs", g.arc_count());
    println!(
        "{:>3} {:>14} {:>14} {:>14} {:>14}",
        "t", "<ab|U^t|ab>", "closed form", "<ba|U^t|ab>", "closed form"
    );
    for t in 0..=t_max {
        if t > 0 {
            psi = walk_step(&g, &psi);
        }
        let amps = psi.amplitudes();
        println!(
            "{t:>3} {:>14.9} {:>14.9} {:>14.9} {:>14.9}",
            amps[ab].re,
            amp_ab(n, t),
            amps[ba].re,
            amp_ba(n, t)
        );
    }

    let model = seven_dim_unitary(n)?;
    println!(
        "\ntheta = {:.9} rad, 7x7 orthogonality defect {:.1e}",
        model.theta,
        model.orthogonality_defect()
    );
    let last = model.trajectory(t_max)[t_max];
    println!("class amplitudes at t={t_max}: {:.6?}", last.as_slice());
    Ok(())
}
