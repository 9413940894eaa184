//! Discrete-time quantum walks with the Grover coin and flip-flop shift on
//! regular graphs, together with the tools needed to certify oscillatory
//! localization:
//!
//! * [`graph`] builds regular graphs with a canonical arc indexing, bipartite
//!   double graphs and edge-disjoint path families.
//! * [`walk`] holds arc-space states and the walk operator `U = S (I ⊗ C)`.
//! * [`analysis`] splits a state into flip, uniform and remainder parts,
//!   evaluates the resulting overlap bounds and provides a dense oracle for the
//!   1-eigenspace of `U²`.
//! * [`electric`] turns starting states into resistor networks, solves the
//!   Kirchhoff currents and converts power and effective resistance into lower
//!   bounds on the flip overlap.
//! * [`complete`] is the closed-form model of the walk on complete graphs.
//! * [`cli`] drives the `oscillwalk` binary.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory:
//!
//! ```bash
//! cargo run --release --example complete_graph_oscillation
//! ```

pub mod analysis;
pub mod cli;
pub mod complete;
pub mod electric;
mod error;
pub mod graph;
pub mod walk;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use analysis::{
    decompose, flip_projection, is_flip_state, measured_overlaps, one_eigenspace_u2,
    oscillation_bounds, uniform_coefficients, BoundReport, Decomposition, FlipProjector,
    OverlapSeries,
};
pub use electric::{
    bounds_from_power, circulation_to_flip, completed_circulation, flip_to_circulation,
    network_from_selfflip_state, network_from_state_double, parallel_resistance_identity,
    paths_resistance_bound, resistance_distance, solve_network, BoundMode, Circulation,
    ElectricNetwork, FlowSolution,
};
pub use graph::{
    bipartite_double, bipartite_partition, build_graph, edge_disjoint_paths, BipartiteDouble,
    Bipartition, Graph, GraphFamily, PathFamily,
};
pub use walk::{
    apply_coin, apply_shift, basis_arc_state, evolve, flip_transform, overlap, uniform_state,
    vertex_averages, walk_step, ArcState, VertexAverages,
};
