use num_complex::Complex64;

use super::{network_from_selfflip_state, network_from_state_double, FlowSolution, ZERO_AMPLITUDE};
use crate::error::{Error, Result};
use crate::graph::{bipartite_double, BipartiteDouble, Graph};
use crate::walk::{vertex_averages, ArcState};

/// Largest skew-symmetry or conservation defect accepted.
pub const CIRCULATION_TOLERANCE: f64 = 1e-9;

/// Flow on the arcs of a bipartite double graph, indexed by its arc ids.
#[derive(Debug, Clone, PartialEq)]
pub struct Circulation {
    flow: Vec<Complex64>,
}

impl Circulation {
    pub fn zero(double: &BipartiteDouble) -> Self {
        Circulation {
            flow: vec![Complex64::new(0.0, 0.0); double.graph.arc_count()],
        }
    }

    /// Wraps a raw flow; use [`Circulation::check`] to validate it.
    pub fn from_flow(flow: Vec<Complex64>) -> Self {
        Circulation { flow }
    }

    pub fn flow(&self) -> &[Complex64] {
        &self.flow
    }

    pub fn flow_mut(&mut self) -> &mut [Complex64] {
        &mut self.flow
    }

    /// Verifies skew symmetry and conservation, naming the first failing
    /// node of the double graph.
    pub fn check(&self, double: &BipartiteDouble) -> Result<()> {
        let dg = &double.graph;
        if self.flow.len() != dg.arc_count() {
            return Err(Error::arg(format!(
                "circulation has {} arcs, double graph has {}",
                self.flow.len(),
                dg.arc_count()
            )));
        }
        for (e, &(x, _)) in dg.edges().iter().enumerate() {
            if (self.flow[2 * e] + self.flow[2 * e + 1]).norm() > CIRCULATION_TOLERANCE {
                return Err(Error::InvalidCirculation {
                    vertex: x,
                    property: "skew symmetry",
                });
            }
        }
        for x in 0..dg.n() {
            let out: Complex64 = dg.out_arcs(x).iter().map(|&a| self.flow[a]).sum();
            if out.norm() > CIRCULATION_TOLERANCE {
                return Err(Error::InvalidCirculation {
                    vertex: x,
                    property: "flow conservation",
                });
            }
        }
        Ok(())
    }
}

/// `⟨uv|φ⟩ = f(u_out, v_in)`.
pub fn circulation_to_flip(g: &Graph, f: &Circulation) -> Result<ArcState> {
    let double = bipartite_double(g);
    f.check(&double)?;
    let amps = (0..g.arc_count())
        .map(|a| f.flow[double.double_arc_for_arc(a)])
        .collect();
    ArcState::from_amplitudes(g, amps)
}

/// Inverse of [`circulation_to_flip`]; `φ` need not be normalized.
pub fn flip_to_circulation(g: &Graph, phi: &ArcState) -> Result<Circulation> {
    assert!(phi.is_bound_to(g), "state is not bound to this graph");
    let avg = vertex_averages(g, phi);
    if let Some(vertex) = (0..g.n()).find(|&u| {
        avg.avg_out[u].norm() > CIRCULATION_TOLERANCE
            || avg.avg_in[u].norm() > CIRCULATION_TOLERANCE
    }) {
        return Err(Error::NotFlipState { vertex });
    }
    let double = bipartite_double(g);
    let mut f = Circulation::zero(&double);
    for (a, &z) in phi.amplitudes().iter().enumerate() {
        let da = double.double_arc_for_arc(a);
        f.flow[da] = z;
        f.flow[da ^ 1] = -z;
    }
    Ok(f)
}

fn require_feasible(sol: &FlowSolution) -> Result<()> {
    if sol.feasible {
        Ok(())
    } else {
        Err(Error::Infeasible)
    }
}

/// Closes the solved currents of the double-graph network with the source
/// edges carrying `ψ0`. The matching flip state `φ'` has `⟨ψ0|φ'⟩ = ‖ψ0‖²`
/// and `‖φ'‖² = ‖ψ0‖² + P`.
pub fn completed_circulation(
    g: &Graph,
    psi0: &ArcState,
    sol: &FlowSolution,
) -> Result<Circulation> {
    require_feasible(sol)?;
    let net = network_from_state_double(g, psi0);
    if sol.currents.len() != net.resistor_edges.len() {
        return Err(Error::arg(
            "solution does not belong to this state's network",
        ));
    }
    let double = bipartite_double(g);
    let mut f = Circulation::zero(&double);
    let mut currents = sol.currents.iter();
    for (a, &delta) in psi0.amplitudes().iter().enumerate() {
        let value = if delta.norm() <= ZERO_AMPLITUDE {
            *currents.next().expect("one current per resistor")
        } else {
            delta
        };
        let da = double.double_arc_for_arc(a);
        f.flow[da] = value;
        f.flow[da ^ 1] = -value;
    }
    f.check(&double)?;
    Ok(f)
}

/// Self-flip analogue of [`completed_circulation`], returned directly as the
/// flip state: `‖φ'‖² = 1 + 2P` and `⟨ψ0|φ'⟩ = 1`.
pub fn completed_selfflip_state(
    g: &Graph,
    psi0: &ArcState,
    sol: &FlowSolution,
) -> Result<ArcState> {
    require_feasible(sol)?;
    let net = network_from_selfflip_state(g, psi0)?;
    if sol.currents.len() != net.resistor_edges.len() {
        return Err(Error::arg(
            "solution does not belong to this state's network",
        ));
    }
    let psi0 = psi0.require_normalized()?;
    let mut amps = vec![Complex64::new(0.0, 0.0); g.arc_count()];
    let mut currents = sol.currents.iter();
    for &(u, v) in g.edges() {
        let a = g.arc(u, v).expect("edge");
        let delta = psi0.amplitudes()[a];
        let value = if delta.norm() <= ZERO_AMPLITUDE {
            *currents.next().expect("one current per resistor")
        } else {
            delta
        };
        amps[a] = value;
        amps[a ^ 1] = -value;
    }
    let phi = ArcState::from_amplitudes(g, amps)?;
    let avg = vertex_averages(g, &phi);
    if let Some(vertex) = (0..g.n()).find(|&u| avg.avg_out[u].norm() > CIRCULATION_TOLERANCE) {
        return Err(Error::NotFlipState { vertex });
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::electric::solve_network;
    use crate::walk::basis_arc_state;
    use approx::assert_abs_diff_eq;

    #[test]
    fn c4_rotation_round_trip() {
        let g = Graph::cycle(4).unwrap();
        let double = bipartite_double(&g);
        // unit flow around one 4-cycle of the double graph: 0o-1i-2o-3i-0o
        let mut f = Circulation::zero(&double);
        for (x, y, sign) in [(0, 1, 1.0), (2, 1, -1.0), (2, 3, 1.0), (0, 3, -1.0)] {
            let a = double.double_arc_for_arc(g.arc(x, y).unwrap());
            f.flow[a] = Complex64::new(sign, 0.0);
            f.flow[a ^ 1] = Complex64::new(-sign, 0.0);
        }
        let phi = circulation_to_flip(&g, &f).unwrap();
        let signs: Vec<f64> = [(0, 1), (2, 1), (2, 3), (0, 3)]
            .iter()
            .map(|&(x, y)| phi.amplitude(&g, x, y).unwrap().re)
            .collect();
        assert_eq!(signs, vec![1.0, -1.0, 1.0, -1.0]);
        assert_eq!(flip_to_circulation(&g, &phi).unwrap(), f);
    }

    #[test]
    fn zero_maps_to_zero() {
        let g = Graph::complete(4).unwrap();
        let double = bipartite_double(&g);
        let phi = circulation_to_flip(&g, &Circulation::zero(&double)).unwrap();
        assert_eq!(phi.norm(), 0.0);
    }

    #[test]
    fn violations_are_reported() {
        let g = Graph::complete(4).unwrap();
        let double = bipartite_double(&g);
        let mut f = Circulation::zero(&double);
        f.flow[0] = Complex64::new(1.0, 0.0);
        assert!(matches!(
            circulation_to_flip(&g, &f),
            Err(Error::InvalidCirculation {
                property: "skew symmetry",
                ..
            })
        ));
        f.flow[1] = Complex64::new(-1.0, 0.0);
        assert!(matches!(
            circulation_to_flip(&g, &f),
            Err(Error::InvalidCirculation {
                property: "flow conservation",
                ..
            })
        ));
        let ab = basis_arc_state(&g, 0, 1).unwrap();
        assert!(matches!(
            flip_to_circulation(&g, &ab),
            Err(Error::NotFlipState { vertex: 0 })
        ));
    }

    #[test]
    fn k3_completion_has_norm_six() {
        let g = Graph::complete(3).unwrap();
        let ab = basis_arc_state(&g, 0, 1).unwrap();
        let sol = solve_network(&network_from_state_double(&g, &ab));
        let phi = circulation_to_flip(&g, &completed_circulation(&g, &ab, &sol).unwrap()).unwrap();
        assert_abs_diff_eq!(phi.norm_sqr(), 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ab.inner(&phi).unwrap().re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn selfflip_completion_on_k4() {
        let g = Graph::complete(4).unwrap();
        let s = &(&basis_arc_state(&g, 0, 1).unwrap() - &basis_arc_state(&g, 1, 0).unwrap())
            * (0.5f64).sqrt();
        let sol = solve_network(&network_from_selfflip_state(&g, &s).unwrap());
        let phi = completed_selfflip_state(&g, &s, &sol).unwrap();
        assert_abs_diff_eq!(phi.norm_sqr(), 1.0 + 2.0 * sol.power, epsilon = 1e-12);
        assert_abs_diff_eq!(s.inner(&phi).unwrap().re, 1.0, epsilon = 1e-12);
    }
}
