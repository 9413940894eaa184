//! The coined walk `U = S·(I ⊗ C)` on the arc space of a regular graph.
//!
//! `C` is the Grover coin `2|s_c⟩⟨s_c| − I`, applied vertex by vertex as an
//! inversion about the mean of the outgoing amplitudes. `S` is the flip-flop
//! shift, which swaps the amplitudes of `(u, v)` and `(v, u)`.

mod state;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use state::{ArcState, NORM_TOLERANCE};

/// Per-vertex averages of the outgoing and incoming amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexAverages {
    pub avg_out: Vec<Complex64>,
    pub avg_in: Vec<Complex64>,
}

impl VertexAverages {
    /// Largest magnitude over all `avg_out` and `avg_in` entries.
    pub fn max_abs(&self) -> f64 {
        self.avg_out
            .iter()
            .chain(&self.avg_in)
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

fn assert_bound(g: &Graph, psi: &ArcState) {
    assert!(
        psi.is_bound_to(g),
        "state of length {} is not bound to this graph ({} arcs)",
        psi.len(),
        g.arc_count()
    );
}

/// `|uv⟩`: amplitude 1 on arc `(u, v)`.
pub fn basis_arc_state(g: &Graph, u: usize, v: usize) -> Result<ArcState> {
    let arc = g.arc(u, v).ok_or(Error::NotAnEdge(u, v))?;
    let mut psi = ArcState::zeros(g);
    psi.amplitudes_mut()[arc] = Complex64::new(1.0, 0.0);
    Ok(psi)
}

/// `|σ_T⟩`: equal superposition over every arc leaving a vertex of `T`.
pub fn uniform_state(g: &Graph, vertices: &[usize]) -> Result<ArcState> {
    let mut members = vertices.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    for &t in &members {
        g.check_vertex(t)?;
    }
    let amp = Complex64::new(1.0 / ((g.degree() * members.len()) as f64).sqrt(), 0.0);
    let mut psi = ArcState::zeros(g);
    let amps = psi.amplitudes_mut();
    for &t in &members {
        for &a in g.out_arcs(t) {
            amps[a] = amp;
        }
    }
    Ok(psi)
}

fn out_mean(g: &Graph, amps: &[Complex64], u: usize) -> Complex64 {
    let sum: Complex64 = g.out_arcs(u).iter().map(|&a| amps[a]).sum();
    sum / g.degree() as f64
}

/// Grover coin at every vertex: `(u, v) ↦ 2·avg_out(u) − ⟨uv|ψ⟩`.
pub fn apply_coin(g: &Graph, psi: &ArcState) -> ArcState {
    assert_bound(g, psi);
    let amps = psi.amplitudes();
    let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
    for u in 0..g.n() {
        let twice_mean = 2.0 * out_mean(g, amps, u);
        for &a in g.out_arcs(u) {
            out[a] = twice_mean - amps[a];
        }
    }
    psi.with_amplitudes(out)
}

/// Flip-flop shift: swaps the amplitudes of `(u, v)` and `(v, u)`.
pub fn apply_shift(g: &Graph, psi: &ArcState) -> ArcState {
    assert_bound(g, psi);
    let amps = psi.amplitudes();
    psi.with_amplitudes((0..amps.len()).map(|a| amps[a ^ 1]).collect())
}

/// One step `S·(I ⊗ C)·ψ`, fused into a single pass.
pub fn walk_step(g: &Graph, psi: &ArcState) -> ArcState {
    assert_bound(g, psi);
    let amps = psi.amplitudes();
    let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
    for u in 0..g.n() {
        let twice_mean = 2.0 * out_mean(g, amps, u);
        for &a in g.out_arcs(u) {
            out[a ^ 1] = twice_mean - amps[a];
        }
    }
    psi.with_amplitudes(out)
}

/// `Uᵗ ψ0`. The starting state must be normalized.
pub fn evolve(g: &Graph, psi0: &ArcState, steps: usize) -> Result<ArcState> {
    assert_bound(g, psi0);
    let mut psi = psi0.require_normalized()?;
    for _ in 0..steps {
        psi = walk_step(g, &psi);
    }
    Ok(psi)
}

/// Flipped state: `⟨uv|ψ̄⟩ = −⟨vu|ψ⟩`.
pub fn flip_transform(g: &Graph, psi: &ArcState) -> ArcState {
    assert_bound(g, psi);
    let amps = psi.amplitudes();
    psi.with_amplitudes((0..amps.len()).map(|a| -amps[a ^ 1]).collect())
}

pub fn vertex_averages(g: &Graph, psi: &ArcState) -> VertexAverages {
    assert_bound(g, psi);
    let amps = psi.amplitudes();
    let d = g.degree() as f64;
    let avg_out = (0..g.n()).map(|u| out_mean(g, amps, u)).collect();
    let avg_in = (0..g.n())
        .map(|u| {
            g.out_arcs(u)
                .iter()
                .map(|&a| amps[a ^ 1])
                .sum::<Complex64>()
                / d
        })
        .collect();
    VertexAverages { avg_out, avg_in }
}

/// Haar-random normalized state: i.i.d. complex Gaussian amplitudes, rescaled.
pub fn random_state(g: &Graph, rng: &mut impl Rng) -> ArcState {
    let amps = (0..g.arc_count())
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    ArcState::from_amplitudes(g, amps)
        .expect("length matches")
        .normalized()
        .expect("Gaussian vector is nonzero")
}

/// `⟨ψ1|ψ2⟩` with the first argument conjugated.
pub fn overlap(psi1: &ArcState, psi2: &ArcState) -> Result<Complex64> {
    psi1.inner(psi2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn basis_states() {
        let g = Graph::complete(4).unwrap();
        let ab = basis_arc_state(&g, 0, 1).unwrap();
        assert_eq!(ab.norm(), 1.0);
        assert!(matches!(
            basis_arc_state(&g, 0, 0),
            Err(Error::NotAnEdge(0, 0))
        ));
        let c4 = Graph::cycle(4).unwrap();
        let s = basis_arc_state(&c4, 0, 1).unwrap();
        let arc = c4.arc(0, 1).unwrap();
        for (a, z) in s.amplitudes().iter().enumerate() {
            assert_eq!(*z, c(if a == arc { 1.0 } else { 0.0 }));
        }
    }

    #[test]
    fn uniform_states() {
        let k3 = Graph::complete(3).unwrap();
        let s = uniform_state(&k3, &[0, 1, 2]).unwrap();
        assert!(s
            .amplitudes()
            .iter()
            .all(|z| (z.re - 1.0 / 6f64.sqrt()).abs() < 1e-15));
        let c4 = Graph::cycle(4).unwrap();
        let sx = uniform_state(&c4, &[0, 2]).unwrap();
        assert_eq!(sx.amplitudes().iter().filter(|z| z.re == 0.5).count(), 4);
        let q3 = Graph::hypercube(3).unwrap();
        let single = uniform_state(&q3, &[5]).unwrap();
        assert_abs_diff_eq!(single.norm(), 1.0, epsilon = 1e-15);
        assert!(matches!(
            uniform_state(&q3, &[]),
            Err(Error::EmptyVertexSet)
        ));
    }

    #[test]
    fn coin_inverts_about_mean() {
        let g = Graph::complete(4).unwrap();
        let psi = basis_arc_state(&g, 0, 1).unwrap();
        let out = apply_coin(&g, &psi);
        let at = |v| out.amplitude(&g, 0, v).unwrap().re;
        assert_abs_diff_eq!(at(1), -1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(at(2), 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(at(3), 2.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn coin_fixes_uniform_and_negates_zero_mean() {
        let g = Graph::complete(4).unwrap();
        let u = uniform_state(&g, &[2]).unwrap();
        assert!(apply_coin(&g, &u).distance(&u) < 1e-15);
        let mut z = ArcState::zeros(&g);
        let arcs = g.out_arcs(1);
        z.amplitudes_mut()[arcs[0]] = c(0.5);
        z.amplitudes_mut()[arcs[1]] = c(-0.25);
        z.amplitudes_mut()[arcs[2]] = c(-0.25);
        assert!(apply_coin(&g, &z).distance(&-&z) < 1e-15);
    }

    #[test]
    fn shift_swaps_arcs() {
        let g = Graph::cycle(5).unwrap();
        let ab = basis_arc_state(&g, 0, 1).unwrap();
        let ba = basis_arc_state(&g, 1, 0).unwrap();
        assert_eq!(apply_shift(&g, &ab), ba);
    }

    #[test]
    fn one_step_on_complete_graph() {
        let n = 7.0;
        let g = Graph::complete(7).unwrap();
        let psi = walk_step(&g, &basis_arc_state(&g, 0, 1).unwrap());
        assert_abs_diff_eq!(
            psi.amplitude(&g, 1, 0).unwrap().re,
            -(n - 3.0) / (n - 1.0),
            epsilon = 1e-15
        );
    }

    #[test]
    fn uniform_state_dynamics() {
        let k5 = Graph::complete(5).unwrap();
        let all: Vec<usize> = (0..5).collect();
        let s = uniform_state(&k5, &all).unwrap();
        assert!(walk_step(&k5, &s).distance(&s) < 1e-15);

        let q3 = Graph::hypercube(3).unwrap();
        let x: Vec<usize> = (0..8usize).filter(|v| v.count_ones() % 2 == 0).collect();
        let y: Vec<usize> = (0..8usize).filter(|v| v.count_ones() % 2 == 1).collect();
        let sx = uniform_state(&q3, &x).unwrap();
        let sy = uniform_state(&q3, &y).unwrap();
        assert!(walk_step(&q3, &sx).distance(&sy) < 1e-15);
        assert_abs_diff_eq!(overlap(&sx, &sy).unwrap().norm(), 0.0);
    }

    #[test]
    fn evolve_zero_steps_is_identity() {
        let g = Graph::hypercube(2).unwrap();
        let psi = basis_arc_state(&g, 0, 1).unwrap();
        assert_eq!(evolve(&g, &psi, 0).unwrap(), psi);
        let big = &psi * 2.0;
        assert!(evolve(&g, &big, 1).is_err());
    }

    #[test]
    fn flip_of_basis_state() {
        let g = Graph::complete(4).unwrap();
        let ab = basis_arc_state(&g, 0, 1).unwrap();
        let ba = basis_arc_state(&g, 1, 0).unwrap();
        assert_eq!(flip_transform(&g, &ab), -&ba);
        let self_flip = &(&ab - &ba) * (0.5f64).sqrt();
        assert!(flip_transform(&g, &self_flip).distance(&self_flip) < 1e-15);
    }

    #[test]
    fn averages() {
        let g = Graph::complete(4).unwrap();
        let all: Vec<usize> = (0..4).collect();
        let s = uniform_state(&g, &all).unwrap();
        let avg = vertex_averages(&g, &s);
        let expect = 1.0 / 12f64.sqrt();
        for u in 0..4 {
            assert_abs_diff_eq!(avg.avg_out[u].re, expect, epsilon = 1e-15);
            assert_abs_diff_eq!(avg.avg_in[u].re, expect, epsilon = 1e-15);
        }
        let ab = basis_arc_state(&g, 0, 1).unwrap();
        let avg = vertex_averages(&g, &ab);
        assert_abs_diff_eq!(avg.avg_out[0].re, 1.0 / 3.0);
        assert_abs_diff_eq!(avg.avg_in[1].re, 1.0 / 3.0);
        assert_eq!(avg.avg_out[1], c(0.0));
    }

    #[test]
    fn k2_walk_is_pure_shift() {
        let g = Graph::complete(2).unwrap();
        let ab = basis_arc_state(&g, 0, 1).unwrap();
        assert_eq!(apply_coin(&g, &ab), ab);
        assert_eq!(walk_step(&g, &ab), basis_arc_state(&g, 1, 0).unwrap());
    }
}
