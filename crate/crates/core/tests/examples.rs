//! Every example compiled in and run with small inputs.
#![allow(dead_code)]

#[path = "../examples/complete_graph_oscillation.rs"]
mod complete_graph_oscillation;
#[path = "../examples/custom_graph_from_edge_list.rs"]
mod custom_graph_from_edge_list;
#[path = "../examples/decompose_state.rs"]
mod decompose_state;
#[path = "../examples/electric_bounds.rs"]
mod electric_bounds;
#[path = "../examples/exact_oscillatory_subspace.rs"]
mod exact_oscillatory_subspace;
#[path = "../examples/random_regular_localization.rs"]
mod random_regular_localization;
#[path = "../examples/resistance_and_paths.rs"]
mod resistance_and_paths;

#[test]
fn complete_graph_oscillation_runs() {
    complete_graph_oscillation::run(16, 8).unwrap();
}

#[test]
fn decompose_state_runs() {
    decompose_state::run().unwrap();
}

#[test]
fn electric_bounds_runs() {
    electric_bounds::run().unwrap();
}

#[test]
fn resistance_and_paths_runs() {
    resistance_and_paths::run().unwrap();
}

#[test]
fn exact_oscillatory_subspace_runs() {
    exact_oscillatory_subspace::run().unwrap();
}

#[test]
fn random_regular_localization_runs() {
    random_regular_localization::run(40, 1).unwrap();
}

#[test]
fn custom_graph_from_edge_list_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("petersen.edges");
    std::fs::write(&path, custom_graph_from_edge_list::PETERSEN).unwrap();
    custom_graph_from_edge_list::run(&path).unwrap();
}
