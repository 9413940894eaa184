//! Built-in property suite behind `oscillwalk verify`.
//!
//! Checks run on a rayon pool (size from `OSCILLWALK_THREADS` when set); each
//! check owns its inputs and RNG stream, and results are sorted by name.

// `ensure!` negates comparisons on purpose so that a NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{
    basis_projector, is_flip_state, measured_overlaps, one_eigenspace_u2_with_ceiling,
    oscillation_bounds, oscillatory_projector, FlipProjector,
};
use crate::complete::{amp_ab, amp_ba, seven_dim_unitary};
use crate::electric::{
    bounds_from_power, circulation_to_flip, completed_circulation, completed_selfflip_state,
    flip_to_circulation, network_from_selfflip_state, network_from_state_double,
    parallel_resistance_identity, paths_resistance_bound, resistance_distance, solve_network,
    solve_network_with, BoundMode, ElectricNetwork, Grounding, SolveOptions,
};
use crate::error::{Error, Result};
use crate::graph::{bipartite_double, edge_disjoint_paths, Graph};
use crate::walk::{basis_arc_state, flip_transform, random_state, walk_step, ArcState};

pub const THREADS_ENV: &str = "OSCILLWALK_THREADS";

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    pub tolerance: f64,
    pub dense_ceiling: usize,
    /// `None` uses rayon's default.
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Positive integer from `OSCILLWALK_THREADS`, if any.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
}

type Verdict = std::result::Result<String, String>;
type Check = fn(&VerifyOptions, &mut ChaCha8Rng) -> Result<Verdict>;

const CHECKS: &[(&str, Check)] = &[
    ("arc_indexing", arc_indexing),
    ("norm_preservation", norm_preservation),
    ("flip_dynamics", flip_dynamics),
    ("decomposition", decomposition),
    ("flip_maximality", flip_maximality),
    ("overlap_bounds", overlap_bounds),
    ("eigenspace_equality", eigenspace_equality),
    ("closed_forms", closed_forms),
    ("seven_dim_model", seven_dim_model),
    ("self_flip_stationarity", self_flip_stationarity),
    ("kirchhoff", kirchhoff),
    ("thomson_minimality", thomson_minimality),
    ("bound_consistency", bound_consistency),
    ("parallel_identity", parallel_identity),
    ("circulation_bijection", circulation_bijection),
    ("edge_transitive_resistance", edge_transitive_resistance),
    ("paths_bound", paths_bound),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

pub fn run_checks(opts: &VerifyOptions) -> Result<Vec<CheckOutcome>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::arg(format!("thread pool: {e}")))?;
    let results: Vec<Result<CheckOutcome>> = pool.install(|| {
        CHECKS
            .par_iter()
            .enumerate()
            .map(|(i, &(name, check))| {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                rng.set_stream(i as u64);
                let verdict = check(opts, &mut rng)?;
                Ok(CheckOutcome {
                    name,
                    passed: verdict.is_ok(),
                    detail: verdict.unwrap_or_else(|e| e),
                })
            })
            .collect()
    });
    let mut outcomes = results.into_iter().collect::<Result<Vec<_>>>()?;
    outcomes.sort_by_key(|o| o.name);
    Ok(outcomes)
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Ok(Err(format!($($msg)+)));
        }
    };
}

fn small_graphs() -> Vec<(String, Graph)> {
    vec![
        ("K5".to_string(), Graph::complete(5).unwrap()),
        ("K8".to_string(), Graph::complete(8).unwrap()),
        ("Q3".to_string(), Graph::hypercube(3).unwrap()),
        ("C8".to_string(), Graph::cycle(8).unwrap()),
        ("K3,3".to_string(), Graph::complete_bipartite(3).unwrap()),
        ("torus(2,4)".to_string(), Graph::torus(2, 4).unwrap()),
        (
            "random(10,4)".to_string(),
            Graph::random_regular(10, 4, 1).unwrap(),
        ),
    ]
}

/// Normalized state supported on `k` random arcs.
fn sparse_state(g: &Graph, k: usize, rng: &mut ChaCha8Rng) -> ArcState {
    let mut s = ArcState::zeros(g);
    for a in sample(rng, g.arc_count(), k.min(g.arc_count())) {
        s.amplitudes_mut()[a] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    }
    s.normalized().expect("nonzero")
}

fn selfflip_state(g: &Graph, u: usize, v: usize) -> ArcState {
    &(&basis_arc_state(g, u, v).unwrap() - &basis_arc_state(g, v, u).unwrap()) * 0.5f64.sqrt()
}

fn random_flip_state(g: &Graph, proj: &FlipProjector, rng: &mut ChaCha8Rng) -> ArcState {
    proj.project(&random_state(g, rng))
        .normalized()
        .expect("flip subspace is nontrivial")
}

fn arc_indexing(_: &VerifyOptions, _: &mut ChaCha8Rng) -> Result<Verdict> {
    for (name, g) in small_graphs() {
        for a in 0..g.arc_count() {
            let (u, v) = g.arc_endpoints(a);
            ensure!(
                g.arc(u, v) == Some(a),
                "{name}: arc {a} does not round-trip"
            );
            ensure!(
                g.arc_endpoints(g.reverse_arc(a)) == (v, u),
                "{name}: reverse of arc {a} is wrong"
            );
        }
    }
    Ok(Ok("arc ids biject with ordered edges".into()))
}

fn norm_preservation(opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    for (name, g) in small_graphs() {
        let mut psi = random_state(&g, rng);
        for t in 1..=30 {
            psi = walk_step(&g, &psi);
            ensure!(
                (psi.norm() - 1.0).abs() <= opts.tolerance,
                "{name}: norm {} after {t} steps",
                psi.norm()
            );
        }
    }
    Ok(Ok("unit norm kept for 30 steps".into()))
}

fn flip_dynamics(opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    for (name, g) in small_graphs() {
        let proj = FlipProjector::new(&g);
        for _ in 0..5 {
            let phi = random_flip_state(&g, &proj, rng);
            let once = walk_step(&g, &phi);
            ensure!(
                once.distance(&flip_transform(&g, &phi)) <= opts.tolerance,
                "{name}: U phi differs from the flipped state"
            );
            ensure!(
                walk_step(&g, &once).distance(&phi) <= opts.tolerance,
                "{name}: U^2 phi differs from phi"
            );
        }
    }
    Ok(Ok("U phi = flipped phi and U^2 phi = phi".into()))
}

fn decomposition(opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    for (name, g) in small_graphs() {
        let proj = FlipProjector::new(&g);
        for _ in 0..10 {
            let psi = random_state(&g, rng);
            let d = proj.decompose(&g, &psi)?;
            let total = d.alpha_sq + d.beta_sq + d.gamma_sq;
            ensure!(
                (total - 1.0).abs() <= opts.tolerance,
                "{name}: weights sum to {total}"
            );
            ensure!(
                d.reconstruction_error(&psi) <= opts.tolerance,
                "{name}: components do not reconstruct the state"
            );
            ensure!(
                is_flip_state(&g, &d.flip_component, 1e-9),
                "{name}: flip component has nonzero averages"
            );
            let pairs = [
                (&d.flip_component, &d.uniform_component),
                (&d.flip_component, &d.remainder_component),
                (&d.uniform_component, &d.remainder_component),
            ];
            for (x, y) in pairs {
                ensure!(
                    x.inner(y)?.norm() <= opts.tolerance,
                    "{name}: components are not orthogonal"
                );
            }
        }
    }
    Ok(Ok("weights sum to 1, components orthogonal".into()))
}

fn flip_maximality(_: &VerifyOptions, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    for (name, g) in small_graphs() {
        let proj = FlipProjector::new(&g);
        let psi = random_state(&g, rng);
        let (alpha_sq, _) = proj.flip_projection(&psi)?;
        for _ in 0..100 {
            let phi = random_flip_state(&g, &proj, rng);
            let w = psi.inner(&phi)?.norm_sqr();
            ensure!(
                w <= alpha_sq + 1e-10,
                "{name}: flip state overlap {w} exceeds {alpha_sq}"
            );
        }
    }
    Ok(Ok("projection dominates 100 random flip states".into()))
}

fn overlap_bounds(opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let graphs = [
        ("K8", Graph::complete(8)?),
        ("Q3", Graph::hypercube(3)?),
        ("C8", Graph::cycle(8)?),
        ("random(10,4)", Graph::random_regular(10, 4, 1)?),
    ];
    for (name, g) in graphs {
        let proj = FlipProjector::new(&g);
        for _ in 0..50 {
            let psi = random_state(&g, rng);
            let b = oscillation_bounds(&proj.decompose(&g, &psi)?);
            let s = measured_overlaps(&g, &psi, 50)?;
            for (t, o) in s.even_overlaps.iter().enumerate() {
                ensure!(
                    *o >= b.even_bound - opts.tolerance,
                    "{name}: even step {} below bound",
                    2 * t
                );
            }
            for (t, o) in s.odd_overlaps.iter().enumerate() {
                ensure!(
                    *o >= b.odd_bound - opts.tolerance,
                    "{name}: odd step {} below bound",
                    2 * t + 1
                );
            }
        }
    }
    Ok(Ok("overlaps above bounds for t <= 50".into()))
}

fn eigenspace_equality(opts: &VerifyOptions, _: &mut ChaCha8Rng) -> Result<Verdict> {
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for n in 4..=8 {
        graphs.push((format!("K{n}"), Graph::complete(n)?));
        graphs.push((format!("C{n}"), Graph::cycle(n)?));
    }
    graphs.push(("Q3".into(), Graph::hypercube(3)?));
    graphs.push(("K3,3".into(), Graph::complete_bipartite(3)?));
    let mut worst: f64 = 0.0;
    for (name, g) in graphs {
        let basis = one_eigenspace_u2_with_ceiling(&g, opts.dense_ceiling)?;
        let diff = (basis_projector(&basis, g.arc_count()) - oscillatory_projector(&g)).amax();
        ensure!(diff <= 1e-8, "{name}: projectors differ by {diff:e}");
        worst = worst.max(diff);
    }
    Ok(Ok(format!("max entry difference {worst:.1e}")))
}

fn closed_forms(_: &VerifyOptions, _: &mut ChaCha8Rng) -> Result<Verdict> {
    for n in [4usize, 8, 16, 100] {
        let g = Graph::complete(n)?;
        let (ab, ba) = (g.arc(0, 1).unwrap(), g.arc(1, 0).unwrap());
        let mut psi = basis_arc_state(&g, 0, 1)?;
        for t in 0..=40 {
            if t > 0 {
                psi = walk_step(&g, &psi);
            }
            let (x, y) = (psi.amplitudes()[ab], psi.amplitudes()[ba]);
            ensure!(
                (x.re - amp_ab(n, t)).abs() <= 1e-9 && (y.re - amp_ba(n, t)).abs() <= 1e-9,
                "K{n}: closed form off at t={t}"
            );
        }
    }
    Ok(Ok("closed forms match simulation for t <= 40".into()))
}

fn seven_dim_model(_: &VerifyOptions, _: &mut ChaCha8Rng) -> Result<Verdict> {
    for n in [4usize, 16, 100] {
        let m = seven_dim_unitary(n)?;
        ensure!(
            m.orthogonality_defect() <= 1e-12,
            "N={n}: matrix is not orthogonal"
        );
        for (t, v) in m.trajectory(40).iter().enumerate() {
            ensure!(
                (v[0] - amp_ab(n, t)).abs() <= 1e-10 && (v[2] - amp_ba(n, t)).abs() <= 1e-10,
                "N={n}: 7x7 iteration disagrees at t={t}"
            );
        }
    }
    Ok(Ok("7x7 iteration reproduces the closed forms".into()))
}

fn self_flip_stationarity(opts: &VerifyOptions, _: &mut ChaCha8Rng) -> Result<Verdict> {
    for n in [5usize, 8, 12] {
        let g = Graph::complete(n)?;
        let psi0 = selfflip_state(&g, 0, 1);
        let s = measured_overlaps(&g, &psi0, 21)?;
        let mut psi = psi0.clone();
        for t in 1..=21 {
            psi = walk_step(&g, &psi);
            if t % 2 == 1 {
                let own = psi0.inner(&psi)?.norm();
                ensure!(
                    (own - s.at_step(t).unwrap()).abs() <= opts.tolerance,
                    "K{n}: odd overlap against psi0 differs at t={t}"
                );
            }
        }
    }
    Ok(Ok(
        "self-flip overlaps agree with overlaps against psi0".into()
    ))
}

/// Feasible networks from single-edge, self-flip and sparse random states.
fn sample_networks(rng: &mut ChaCha8Rng) -> Vec<(String, ElectricNetwork)> {
    let mut out = Vec::new();
    for (name, g) in small_graphs() {
        out.push((
            format!("{name} edge"),
            network_from_state_double(&g, &basis_arc_state(&g, 0, g.neighbors(0)[0]).unwrap()),
        ));
        let v = g.neighbors(0)[0];
        out.push((
            format!("{name} selfflip"),
            network_from_selfflip_state(&g, &selfflip_state(&g, 0, v)).unwrap(),
        ));
        for k in [2usize, 3] {
            out.push((
                format!("{name} sparse{k}"),
                network_from_state_double(&g, &sparse_state(&g, k, rng)),
            ));
        }
    }
    out.retain(|(_, net)| solve_network(net).feasible);
    out
}

fn kirchhoff(opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let nets = sample_networks(rng);
    for (name, net) in &nets {
        let low = solve_network(net);
        let residual = net.kirchhoff_residual(&low);
        ensure!(
            residual <= opts.tolerance,
            "{name}: current-law residual {residual:e}"
        );
        let high = solve_network_with(
            net,
            SolveOptions {
                grounding: Grounding::Highest,
                ..Default::default()
            },
        );
        let shift = low
            .currents
            .iter()
            .zip(&high.currents)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        ensure!(
            shift <= 1e-10,
            "{name}: currents depend on grounding ({shift:e})"
        );
    }
    Ok(Ok(format!("{} feasible networks", nets.len())))
}

fn thomson_minimality(_: &VerifyOptions, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let nets = sample_networks(rng);
    let mut tested = 0;
    for (name, net) in &nets {
        let sol = solve_network(net);
        for p in net.perturbed_powers(&sol, 100, 1e-3, rng) {
            tested += 1;
            ensure!(p > sol.power, "{name}: perturbation lowered power");
        }
    }
    Ok(Ok(format!("{tested} perturbations increased power")))
}

fn bound_consistency(opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    for (name, g) in small_graphs() {
        let proj = FlipProjector::new(&g);
        let v = g.neighbors(0)[0];
        let mut states = vec![basis_arc_state(&g, 0, v)?];
        states.extend((0..4).map(|_| sparse_state(&g, 3, rng)));
        for psi in states {
            let sol = solve_network(&network_from_state_double(&g, &psi));
            let (lower, _) = bounds_from_power(sol.power, BoundMode::Double);
            let (alpha_sq, _) = proj.flip_projection(&psi)?;
            ensure!(
                lower <= alpha_sq + opts.tolerance,
                "{name}: bound {lower} exceeds {alpha_sq}"
            );
        }
        let sf = selfflip_state(&g, 0, v);
        let sol = solve_network(&network_from_selfflip_state(&g, &sf)?);
        let (lower, _) = bounds_from_power(sol.power, BoundMode::SelfFlip);
        let (alpha_sq, _) = proj.flip_projection(&sf)?;
        ensure!(
            lower <= alpha_sq + opts.tolerance,
            "{name}: self-flip bound {lower} exceeds {alpha_sq}"
        );
    }
    Ok(Ok("electric bounds never exceed the projection".into()))
}

fn parallel_identity(_: &VerifyOptions, _: &mut ChaCha8Rng) -> Result<Verdict> {
    for (name, g) in [
        ("K3", Graph::complete(3)?),
        ("K4", Graph::complete(4)?),
        ("Q3", Graph::hypercube(3)?),
    ] {
        let r = solve_network(&network_from_state_double(&g, &basis_arc_state(&g, 0, 1)?)).power;
        let double = bipartite_double(&g);
        let omega = resistance_distance(&double.graph, double.out_vertex(0), double.in_vertex(1))?;
        ensure!(
            (omega - parallel_resistance_identity(r)).abs() <= 1e-9,
            "{name}: {omega} vs {}",
            parallel_resistance_identity(r)
        );
    }
    Ok(Ok(
        "double-graph resistance matches the parallel formula".into()
    ))
}

fn circulation_bijection(opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    for (name, g) in small_graphs() {
        let proj = FlipProjector::new(&g);
        let phi = &random_flip_state(&g, &proj, rng) * 2.5;
        let back = circulation_to_flip(&g, &flip_to_circulation(&g, &phi)?)?;
        ensure!(
            back.distance(&phi) <= 1e-12,
            "{name}: round trip moved the state"
        );

        let v = g.neighbors(0)[0];
        let psi = basis_arc_state(&g, 0, v)?;
        let sol = solve_network(&network_from_state_double(&g, &psi));
        let completed = circulation_to_flip(&g, &completed_circulation(&g, &psi, &sol)?)?;
        ensure!(
            (completed.norm_sqr() - (1.0 + sol.power)).abs() <= opts.tolerance,
            "{name}: |phi'|^2 = {} but 1 + P = {}",
            completed.norm_sqr(),
            1.0 + sol.power
        );
        ensure!(
            (psi.inner(&completed)? - 1.0).norm() <= opts.tolerance,
            "{name}: <psi0|phi'> is not 1"
        );
        let sf = selfflip_state(&g, 0, v);
        let sol = solve_network(&network_from_selfflip_state(&g, &sf)?);
        let completed = completed_selfflip_state(&g, &sf, &sol)?;
        ensure!(
            (completed.norm_sqr() - (1.0 + 2.0 * sol.power)).abs() <= opts.tolerance,
            "{name}: self-flip completion has the wrong norm"
        );
    }
    Ok(Ok("round trips and completion norms hold".into()))
}

fn edge_transitive_resistance(_: &VerifyOptions, _: &mut ChaCha8Rng) -> Result<Verdict> {
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for n in 3..=9 {
        graphs.push((format!("K{n}"), Graph::complete(n)?));
        graphs.push((format!("C{n}"), Graph::cycle(n)?));
    }
    for d in 1..=4 {
        graphs.push((format!("Q{d}"), Graph::hypercube(d)?));
    }
    for n in [2usize, 3, 4] {
        graphs.push((format!("K{n},{n}"), Graph::complete_bipartite(n)?));
    }
    graphs.push(("torus(2,5)".into(), Graph::torus(2, 5)?));
    graphs.push(("torus(3,3)".into(), Graph::torus(3, 3)?));
    for (name, g) in graphs {
        let v = g.neighbors(0)[0];
        let expected = (g.n() as f64 - 1.0) / (g.degree() as f64 * g.n() as f64 / 2.0);
        let omega = resistance_distance(&g, 0, v)?;
        ensure!(
            (omega - expected).abs() <= 1e-9,
            "{name}: {omega} vs {expected}"
        );
    }
    Ok(Ok("(N-1)/(dN/2) reproduced".into()))
}

fn paths_bound(_: &VerifyOptions, _: &mut ChaCha8Rng) -> Result<Verdict> {
    let graphs = [
        ("Q3", Graph::hypercube(3)?),
        ("K6", Graph::complete(6)?),
        ("torus(2,5)", Graph::torus(2, 5)?),
        ("random(20,4)", Graph::random_regular(20, 4, 2)?),
    ];
    for (name, g) in graphs {
        for t in 1..g.n() {
            let family = edge_disjoint_paths(&g, 0, t)?;
            ensure!(
                family.audit(&g),
                "{name}: path family 0-{t} is not edge-disjoint"
            );
            ensure!(
                family.k() <= g.degree(),
                "{name}: k={} for 0-{t}",
                family.k()
            );
            let bound = paths_resistance_bound(&family.lengths())?;
            let omega = resistance_distance(&g, 0, t)?;
            ensure!(
                omega <= bound + 1e-12,
                "{name}: omega {omega} above paths bound {bound}"
            );
        }
    }
    Ok(Ok("resistance below the parallel-paths bound".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass_single_threaded() {
        let outcomes = run_checks(&VerifyOptions {
            seed: 11,
            tolerance: 1e-9,
            dense_ceiling: 2000,
            threads: Some(1),
        })
        .unwrap();
        assert_eq!(outcomes.len(), CHECKS.len());
        for o in &outcomes {
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
        let mut names = check_names();
        names.sort();
        assert_eq!(outcomes.iter().map(|o| o.name).collect::<Vec<_>>(), names);
    }

    #[test]
    fn capacity_error_propagates() {
        let err = run_checks(&VerifyOptions {
            seed: 0,
            tolerance: 1e-9,
            dense_ceiling: 10,
            threads: Some(2),
        })
        .unwrap_err();
        assert!(matches!(err, Error::Capacity { .. }));
    }
}
