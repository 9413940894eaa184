//! Resistor networks built from starting states, their Kirchhoff solutions,
//! and the flip-overlap bounds derived from dissipated power and effective
//! resistance.
//!
//! Nodes of a network built on the bipartite double graph follow
//! [`BipartiteDouble`](crate::graph::BipartiteDouble): `v_out = v`,
//! `v_in = n + v`.

mod circulation;
mod solver;

use num_complex::Complex64;
use rand::Rng;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::walk::{flip_transform, ArcState};

pub use circulation::{
    circulation_to_flip, completed_circulation, completed_selfflip_state, flip_to_circulation,
    Circulation, CIRCULATION_TOLERANCE,
};
pub use solver::{
    solve_network, solve_network_with, Grounding, SolveOptions, SolverKind, DENSE_SOLVER_LIMIT,
    FEASIBILITY_TOLERANCE,
};

/// Amplitudes at or below this magnitude become resistors.
pub const ZERO_AMPLITUDE: f64 = 1e-12;

/// Deviation from `ψ̄ = ψ` tolerated by the self-flip construction.
pub const SELF_FLIP_TOLERANCE: f64 = 1e-9;

/// Unit resistors between nodes plus a complex current injection per node.
/// Parallel resistors are stored as repeated pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct ElectricNetwork {
    pub node_count: usize,
    pub resistor_edges: Vec<(usize, usize)>,
    pub injections: Vec<Complex64>,
}

/// Kirchhoff solution of an [`ElectricNetwork`]. `currents[i]` flows from the
/// first to the second node of `resistor_edges[i]`. An infeasible network has
/// empty current and potential vectors and infinite power.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowSolution {
    pub feasible: bool,
    pub currents: Vec<Complex64>,
    pub potentials: Vec<Complex64>,
    pub power: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMode {
    /// Network on the bipartite double graph.
    Double,
    /// Network on the graph itself, for self-flip states.
    SelfFlip,
}

fn pair_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

impl ElectricNetwork {
    pub fn new(
        node_count: usize,
        resistor_edges: Vec<(usize, usize)>,
        injections: Vec<Complex64>,
    ) -> Result<Self> {
        if injections.len() != node_count {
            return Err(Error::arg(format!(
                "{} injections for {node_count} nodes",
                injections.len()
            )));
        }
        for &(x, y) in &resistor_edges {
            if x >= node_count || y >= node_count {
                return Err(Error::arg(format!("resistor ({x}, {y}) out of range")));
            }
            if x == y {
                return Err(Error::arg(format!("resistor loop at node {x}")));
            }
        }
        Ok(ElectricNetwork {
            node_count,
            resistor_edges,
            injections,
        })
    }

    /// Debug dump: node count, resistor list and the nonzero injections.
    pub fn to_json(&self) -> Value {
        let mut injections = Map::new();
        for (v, z) in self.injections.iter().enumerate() {
            if z.norm() > 0.0 {
                injections.insert(v.to_string(), pair_json(*z));
            }
        }
        json!({
            "nodes": self.node_count,
            "resistor_edges": self.resistor_edges,
            "injections": injections,
        })
    }

    /// Fundamental cycles of the resistor graph, each as `(edge index, ±1)`
    /// with the sign giving traversal against or along the stored orientation.
    pub fn cycle_basis(&self) -> Vec<Vec<(usize, f64)>> {
        let n = self.node_count;
        let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (i, &(x, y)) in self.resistor_edges.iter().enumerate() {
            incident[x].push((i, y));
            incident[y].push((i, x));
        }
        // BFS forest: parent edge and depth per node
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut tree_edge = vec![false; self.resistor_edges.len()];
        for root in 0..n {
            if depth[root] != usize::MAX {
                continue;
            }
            depth[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &(i, y) in &incident[x] {
                    if depth[y] == usize::MAX {
                        depth[y] = depth[x] + 1;
                        parent[y] = Some((i, x));
                        tree_edge[i] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        // unit flow along node -> parent(node)
        let step_up = |node: usize| -> (usize, usize, f64) {
            let (i, p) = parent[node].expect("non-root");
            let sign = if self.resistor_edges[i] == (node, p) {
                1.0
            } else {
                -1.0
            };
            (i, p, sign)
        };
        let mut cycles = Vec::new();
        for (i, &(x, y)) in self.resistor_edges.iter().enumerate() {
            if tree_edge[i] {
                continue;
            }
            // edge x -> y, then tree path y -> x
            let mut cycle = vec![(i, 1.0)];
            let (mut a, mut b) = (y, x);
            let mut tail = Vec::new();
            while a != b {
                if depth[a] >= depth[b] {
                    let (e, p, s) = step_up(a);
                    cycle.push((e, s));
                    a = p;
                } else {
                    let (e, p, s) = step_up(b);
                    tail.push((e, -s));
                    b = p;
                }
            }
            cycle.extend(tail.into_iter().rev());
            cycles.push(cycle);
        }
        cycles
    }

    /// Largest violation of the current law at any node.
    pub fn kirchhoff_residual(&self, sol: &FlowSolution) -> f64 {
        if !sol.feasible {
            return f64::INFINITY;
        }
        let mut net_out = vec![Complex64::new(0.0, 0.0); self.node_count];
        for (&(x, y), i) in self.resistor_edges.iter().zip(&sol.currents) {
            net_out[x] += i;
            net_out[y] -= i;
        }
        net_out
            .iter()
            .zip(&self.injections)
            .map(|(o, inj)| (o - inj).norm())
            .fold(0.0, f64::max)
    }

    /// Powers of `trials` random perturbations of `sol.currents` by resistor
    /// circulations of norm `scale`. Empty when the resistor graph is a forest.
    pub fn perturbed_powers(
        &self,
        sol: &FlowSolution,
        trials: usize,
        scale: f64,
        rng: &mut impl Rng,
    ) -> Vec<f64> {
        let cycles = self.cycle_basis();
        if cycles.is_empty() || !sol.feasible {
            return Vec::new();
        }
        (0..trials)
            .map(|_| {
                let mut delta = vec![Complex64::new(0.0, 0.0); self.resistor_edges.len()];
                for cycle in &cycles {
                    let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    for &(e, s) in cycle {
                        delta[e] += c * s;
                    }
                }
                let norm = delta.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                sol.currents
                    .iter()
                    .zip(&delta)
                    .map(|(i, d)| (i + d * (scale / norm)).norm_sqr())
                    .sum()
            })
            .collect()
    }
}

impl FlowSolution {
    pub(crate) fn infeasible() -> Self {
        FlowSolution {
            feasible: false,
            currents: Vec::new(),
            potentials: Vec::new(),
            power: f64::INFINITY,
        }
    }

    /// JSON form; infinite power is written as `null`.
    pub fn to_json(&self) -> Value {
        let power = if self.power.is_finite() {
            json!(self.power)
        } else {
            Value::Null
        };
        json!({
            "feasible": self.feasible,
            "currents": self.currents.iter().map(|z| pair_json(*z)).collect::<Vec<_>>(),
            "potentials": self.potentials.iter().map(|z| pair_json(*z)).collect::<Vec<_>>(),
            "power": power,
        })
    }
}

fn assert_bound(g: &Graph, psi: &ArcState) {
    assert!(psi.is_bound_to(g), "state is not bound to this graph");
}

/// Network on the bipartite double graph: a zero amplitude on `(u, v)` is a
/// resistor `{u_out, v_in}`, a nonzero amplitude `δ` injects `δ` at `v_in`
/// and extracts it at `u_out`. Resistors appear in arc order.
pub fn network_from_state_double(g: &Graph, psi0: &ArcState) -> ElectricNetwork {
    assert_bound(g, psi0);
    let n = g.n();
    let mut net = ElectricNetwork {
        node_count: 2 * n,
        resistor_edges: Vec::new(),
        injections: vec![Complex64::new(0.0, 0.0); 2 * n],
    };
    for (a, &delta) in psi0.amplitudes().iter().enumerate() {
        let (u, v) = g.arc_endpoints(a);
        if delta.norm() <= ZERO_AMPLITUDE {
            net.resistor_edges.push((u, n + v));
        } else {
            net.injections[n + v] += delta;
            net.injections[u] -= delta;
        }
    }
    net
}

/// Network on `g` for a self-flip state, one element per edge `{u, v}` with
/// `u < v`: resistor when `⟨uv|ψ0⟩ = 0`, otherwise a current source of
/// `⟨uv|ψ0⟩` from `u` to `v`.
pub fn network_from_selfflip_state(g: &Graph, psi0: &ArcState) -> Result<ElectricNetwork> {
    assert_bound(g, psi0);
    let psi0 = psi0.require_normalized()?;
    let deviation = flip_transform(g, &psi0).distance(&psi0);
    if deviation > SELF_FLIP_TOLERANCE {
        return Err(Error::NotSelfFlip { deviation });
    }
    let mut net = ElectricNetwork {
        node_count: g.n(),
        resistor_edges: Vec::new(),
        injections: vec![Complex64::new(0.0, 0.0); g.n()],
    };
    for &(u, v) in g.edges() {
        let delta = psi0.amplitudes()[g.arc(u, v).expect("edge")];
        if delta.norm() <= ZERO_AMPLITUDE {
            net.resistor_edges.push((u, v));
        } else {
            net.injections[v] += delta;
            net.injections[u] -= delta;
        }
    }
    Ok(net)
}

/// Effective resistance between `a` and `b` with every edge a unit resistor.
pub fn resistance_distance(g: &Graph, a: usize, b: usize) -> Result<f64> {
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    if a == b {
        return Err(Error::arg(
            "resistance distance needs two distinct vertices",
        ));
    }
    let (_, labels) = g.components();
    if labels[a] != labels[b] {
        return Err(Error::Disconnected(a, b));
    }
    let mut injections = vec![Complex64::new(0.0, 0.0); g.n()];
    injections[a] = Complex64::new(1.0, 0.0);
    injections[b] = Complex64::new(-1.0, 0.0);
    let net = ElectricNetwork {
        node_count: g.n(),
        resistor_edges: g.edges().to_vec(),
        injections,
    };
    let sol = solve_network(&net);
    Ok((sol.potentials[a] - sol.potentials[b]).re)
}

/// `(α² lower bound, overlap lower bound)` implied by a network's power.
pub fn bounds_from_power(power: f64, mode: BoundMode) -> (f64, f64) {
    debug_assert!(power >= 0.0 || power.is_nan());
    if power.is_infinite() {
        return (0.0, -1.0);
    }
    let p = match mode {
        BoundMode::Double => power,
        BoundMode::SelfFlip => 2.0 * power,
    };
    (1.0 / (1.0 + p), (1.0 - p) / (1.0 + p))
}

/// `Ω(a_out, b_in)` on the double graph when the single-edge network has
/// effective resistance `r`: that network in parallel with one more resistor.
pub fn parallel_resistance_identity(r: f64) -> f64 {
    1.0 - 1.0 / (1.0 + r)
}

/// Upper bound on `Ω(s, t)` from edge-disjoint `s`–`t` paths of the given
/// lengths, treated as parallel series chains.
pub fn paths_resistance_bound(lengths: &[usize]) -> Result<f64> {
    if lengths.is_empty() {
        return Err(Error::arg("path family is empty"));
    }
    if lengths.contains(&0) {
        return Err(Error::arg("path lengths must be at least 1"));
    }
    Ok(1.0 / lengths.iter().map(|&l| 1.0 / l as f64).sum::<f64>())
}

/// `Ω < 1/2` makes the overlap bound of a single-edge or self-flip start
/// strictly positive.
pub fn certifies_localization(omega: f64) -> bool {
    omega < 0.5
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::basis_arc_state;
    use approx::assert_abs_diff_eq;

    #[test]
    fn k3_single_edge_network_is_a_path() {
        let g = Graph::complete(3).unwrap();
        let net = network_from_state_double(&g, &basis_arc_state(&g, 0, 1).unwrap());
        assert_eq!(net.node_count, 6);
        assert_eq!(net.resistor_edges.len(), 5);
        assert_eq!(net.injections[3 + 1], Complex64::new(1.0, 0.0));
        assert_eq!(net.injections[0], Complex64::new(-1.0, 0.0));
        assert!(net.cycle_basis().is_empty());
        let sol = solve_network(&net);
        assert_abs_diff_eq!(sol.power, 5.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            bounds_from_power(sol.power, BoundMode::Double).0,
            1.0 / 6.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn k3_symmetric_state_is_infeasible() {
        let g = Graph::complete(3).unwrap();
        let s = &(&basis_arc_state(&g, 0, 1).unwrap() + &basis_arc_state(&g, 1, 0).unwrap())
            * (0.5f64).sqrt();
        let sol = solve_network(&network_from_state_double(&g, &s));
        assert!(!sol.feasible);
        assert_eq!(bounds_from_power(sol.power, BoundMode::Double), (0.0, -1.0));
        assert!(sol.to_json()["power"].is_null());
    }

    #[test]
    fn selfflip_network_on_k5() {
        let g = Graph::complete(5).unwrap();
        let s = &(&basis_arc_state(&g, 0, 1).unwrap() - &basis_arc_state(&g, 1, 0).unwrap())
            * (0.5f64).sqrt();
        let net = network_from_selfflip_state(&g, &s).unwrap();
        assert_eq!(net.resistor_edges.len(), 9);
        assert_abs_diff_eq!(net.injections[1].re, 0.5f64.sqrt(), epsilon = 1e-15);
        assert!(matches!(
            network_from_selfflip_state(&g, &basis_arc_state(&g, 0, 1).unwrap()),
            Err(Error::NotSelfFlip { .. })
        ));
        assert!(network_from_selfflip_state(&g, &ArcState::zeros(&g)).is_err());
    }

    #[test]
    fn resistance_examples() {
        let k4 = Graph::complete(4).unwrap();
        assert_abs_diff_eq!(
            resistance_distance(&k4, 0, 1).unwrap(),
            0.5,
            epsilon = 1e-12
        );
        let c7 = Graph::cycle(7).unwrap();
        assert_abs_diff_eq!(
            resistance_distance(&c7, 2, 3).unwrap(),
            6.0 / 7.0,
            epsilon = 1e-12
        );
        assert!(resistance_distance(&k4, 1, 1).is_err());
        assert!(resistance_distance(&k4, 0, 9).is_err());
    }

    #[test]
    fn scalar_identities() {
        assert_abs_diff_eq!(parallel_resistance_identity(5.0), 5.0 / 6.0);
        assert_eq!(parallel_resistance_identity(0.0), 0.0);
        assert_eq!(parallel_resistance_identity(1.0), 0.5);
        assert_eq!(bounds_from_power(0.0, BoundMode::SelfFlip), (1.0, 1.0));
        assert_abs_diff_eq!(bounds_from_power(5.0, BoundMode::Double).1, -2.0 / 3.0);
        assert_abs_diff_eq!(
            paths_resistance_bound(&[1, 3, 3]).unwrap(),
            0.6,
            epsilon = 1e-15
        );
        assert_eq!(paths_resistance_bound(&[4]).unwrap(), 4.0);
        assert_abs_diff_eq!(paths_resistance_bound(&[3, 3, 3, 3]).unwrap(), 0.75);
        assert!(paths_resistance_bound(&[]).is_err());
    }

    #[test]
    fn cycle_basis_is_conserving() {
        let g = Graph::complete(4).unwrap();
        let net = network_from_state_double(&g, &basis_arc_state(&g, 0, 1).unwrap());
        let cycles = net.cycle_basis();
        // 11 resistors on 8 nodes, one component
        assert_eq!(cycles.len(), 11 - 8 + 1);
        for cycle in cycles {
            let mut net_out = vec![0.0; net.node_count];
            for (e, s) in cycle {
                let (x, y) = net.resistor_edges[e];
                net_out[x] += s;
                net_out[y] -= s;
            }
            assert!(net_out.iter().all(|v| *v == 0.0));
        }
    }

    #[test]
    fn dump_lists_nonzero_injections() {
        let g = Graph::complete(3).unwrap();
        let net = network_from_state_double(&g, &basis_arc_state(&g, 0, 1).unwrap());
        let dump = net.to_json();
        assert_eq!(dump["nodes"], 6);
        assert_eq!(dump["injections"].as_object().unwrap().len(), 2);
        assert_eq!(dump["resistor_edges"].as_array().unwrap().len(), 5);
    }
}
