use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::graph::{bipartite_partition, Graph};
use crate::walk::{uniform_state, vertex_averages, ArcState};

/// Residual norm below which an orthogonalized indicator is treated as
/// linearly dependent on the earlier ones.
const DROP_TOLERANCE: f64 = 1e-12;

/// Flip + uniform + remainder split of a normalized state.
#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub alpha_sq: f64,
    pub beta_sq: f64,
    pub gamma_sq: f64,
    pub flip_component: ArcState,
    pub uniform_component: ArcState,
    pub remainder_component: ArcState,
}

impl Decomposition {
    /// `‖ψ − (flip + uniform + remainder)‖`.
    pub fn reconstruction_error(&self, psi: &ArcState) -> f64 {
        let sum = &(&self.flip_component + &self.uniform_component) + &self.remainder_component;
        sum.distance(psi)
    }
}

/// Result of projecting a state onto the uniform states.
#[derive(Debug, Clone)]
pub struct UniformProjection {
    pub beta_sq: f64,
    /// `[β_V]` for a non-bipartite graph, `[β_X, β_Y]` for a bipartite one.
    pub coefficients: Vec<Complex64>,
    pub uniform_component: ArcState,
}

/// `true` iff every average outgoing and incoming amplitude has magnitude at
/// most `tol`.
pub fn is_flip_state(g: &Graph, psi: &ArcState, tol: f64) -> bool {
    assert!(tol > 0.0, "tolerance must be positive");
    vertex_averages(g, psi).max_abs() <= tol
}

/// Orthonormal basis of the span of the per-vertex out- and in-indicators.
/// The flip states are exactly its orthogonal complement.
#[derive(Debug, Clone)]
pub struct FlipProjector {
    basis: Vec<Vec<f64>>,
    arc_count: usize,
    graph_key: u64,
}

impl FlipProjector {
    pub fn new(g: &Graph) -> Self {
        let arcs = g.arc_count();
        let weight = 1.0 / (g.degree() as f64).sqrt();
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(2 * g.n());
        let indicators = (0..g.n()).flat_map(|u| {
            let out: Vec<usize> = g.out_arcs(u).to_vec();
            let inc: Vec<usize> = out.iter().map(|&a| a ^ 1).collect();
            [out, inc]
        });
        for support in indicators {
            let mut v = vec![0.0; arcs];
            for &a in &support {
                v[a] = weight;
            }
            // modified Gram–Schmidt, two passes
            for _ in 0..2 {
                for q in &basis {
                    let c: f64 = q.iter().zip(&v).map(|(x, y)| x * y).sum();
                    if c != 0.0 {
                        v.iter_mut().zip(q).for_each(|(y, x)| *y -= c * x);
                    }
                }
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > DROP_TOLERANCE {
                v.iter_mut().for_each(|x| *x /= norm);
                basis.push(v);
            }
        }
        FlipProjector {
            basis,
            arc_count: arcs,
            graph_key: g.key(),
        }
    }

    /// Dimension of the indicator span.
    pub fn indicator_rank(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the flip subspace.
    pub fn flip_dimension(&self) -> usize {
        self.arc_count - self.basis.len()
    }

    pub fn indicator_basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    /// Orthogonal projection onto the flip subspace (no normalization check).
    pub fn project(&self, psi: &ArcState) -> ArcState {
        assert_eq!(
            psi.graph_key(),
            self.graph_key,
            "state bound to another graph"
        );
        let mut out: Vec<Complex64> = psi.amplitudes().to_vec();
        for q in &self.basis {
            let c: Complex64 = q.iter().zip(psi.amplitudes()).map(|(x, z)| z * *x).sum();
            out.iter_mut().zip(q).for_each(|(z, x)| *z -= c * *x);
        }
        psi.with_amplitudes(out)
    }

    /// `(|α|², flip component)` of a normalized state.
    pub fn flip_projection(&self, psi: &ArcState) -> Result<(f64, ArcState)> {
        let psi = psi.require_normalized()?;
        let flip = self.project(&psi);
        Ok((flip.norm_sqr(), flip))
    }

    pub fn decompose(&self, g: &Graph, psi: &ArcState) -> Result<Decomposition> {
        let psi = psi.require_normalized()?;
        let flip_component = self.project(&psi);
        let uniform = uniform_coefficients(g, &psi)?;
        let remainder_component = &(&psi - &flip_component) - &uniform.uniform_component;
        Ok(Decomposition {
            alpha_sq: flip_component.norm_sqr(),
            beta_sq: uniform.beta_sq,
            gamma_sq: remainder_component.norm_sqr(),
            flip_component,
            uniform_component: uniform.uniform_component,
            remainder_component,
        })
    }
}

/// Uniform states of `g`: `σ_V`, or `σ_X` and `σ_Y` when `g` is bipartite.
pub fn uniform_basis(g: &Graph) -> Vec<ArcState> {
    match bipartite_partition(g) {
        Some(p) => vec![
            uniform_state(g, &p.partite_x).expect("nonempty"),
            uniform_state(g, &p.partite_y).expect("nonempty"),
        ],
        None => {
            let all: Vec<usize> = (0..g.n()).collect();
            vec![uniform_state(g, &all).expect("nonempty")]
        }
    }
}

/// `|α|²` and the flip component of a normalized state.
pub fn flip_projection(g: &Graph, psi: &ArcState) -> Result<(f64, ArcState)> {
    FlipProjector::new(g).flip_projection(psi)
}

pub fn uniform_coefficients(g: &Graph, psi: &ArcState) -> Result<UniformProjection> {
    let psi = psi.require_normalized()?;
    let mut component = ArcState::zeros(g);
    let mut coefficients = Vec::new();
    for sigma in uniform_basis(g) {
        let beta = sigma.inner_unchecked(&psi);
        component = &component + &(&sigma * beta);
        coefficients.push(beta);
    }
    Ok(UniformProjection {
        beta_sq: coefficients.iter().map(|b| b.norm_sqr()).sum(),
        coefficients,
        uniform_component: component,
    })
}

pub fn decompose(g: &Graph, psi: &ArcState) -> Result<Decomposition> {
    FlipProjector::new(g).decompose(g, psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::basis_arc_state;
    use approx::assert_abs_diff_eq;

    fn c4_rotation() -> (Graph, ArcState) {
        let g = Graph::cycle(4).unwrap();
        let mut s = ArcState::zeros(&g);
        let amp = 1.0 / 8f64.sqrt();
        for u in 0..4 {
            let v = (u + 1) % 4;
            s.amplitudes_mut()[g.arc(u, v).unwrap()] = Complex64::new(amp, 0.0);
            s.amplitudes_mut()[g.arc(v, u).unwrap()] = Complex64::new(-amp, 0.0);
        }
        (g, s)
    }

    #[test]
    fn flip_state_detection() {
        let (g, rot) = c4_rotation();
        assert!(is_flip_state(&g, &rot, 1e-12));
        let all: Vec<usize> = (0..4).collect();
        assert!(!is_flip_state(&g, &uniform_state(&g, &all).unwrap(), 1e-9));
        assert!(!is_flip_state(
            &g,
            &basis_arc_state(&g, 0, 1).unwrap(),
            1e-9
        ));
    }

    #[test]
    fn indicator_rank_counts_double_components() {
        // non-bipartite: one dependency, bipartite: two
        let k5 = FlipProjector::new(&Graph::complete(5).unwrap());
        assert_eq!(k5.indicator_rank(), 9);
        let q3 = FlipProjector::new(&Graph::hypercube(3).unwrap());
        assert_eq!(q3.indicator_rank(), 14);
        assert_eq!(q3.flip_dimension(), 24 - 14);
    }

    #[test]
    fn single_edge_on_k4() {
        let g = Graph::complete(4).unwrap();
        let ab = basis_arc_state(&g, 0, 1).unwrap();
        let dec = decompose(&g, &ab).unwrap();
        assert_abs_diff_eq!(dec.alpha_sq, 5.0 / 12.0, epsilon = 1e-12);
        assert_abs_diff_eq!(dec.beta_sq, 1.0 / 12.0, epsilon = 1e-12);
        assert_abs_diff_eq!(dec.gamma_sq, 0.5, epsilon = 1e-12);
        assert!(dec.reconstruction_error(&ab) < 1e-12);
        assert!(is_flip_state(&g, &dec.flip_component, 1e-9));
    }

    #[test]
    fn pure_components() {
        let (g, rot) = c4_rotation();
        let dec = decompose(&g, &rot).unwrap();
        assert_abs_diff_eq!(dec.alpha_sq, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(dec.beta_sq, 0.0, epsilon = 1e-12);

        let k5 = Graph::complete(5).unwrap();
        let all: Vec<usize> = (0..5).collect();
        let sigma = uniform_state(&k5, &all).unwrap();
        let dec = decompose(&k5, &sigma).unwrap();
        assert_abs_diff_eq!(dec.alpha_sq, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(dec.beta_sq, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(dec.gamma_sq, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn uniform_coefficient_of_single_edge() {
        for n in [4usize, 6, 9] {
            let g = Graph::complete(n).unwrap();
            let ab = basis_arc_state(&g, 0, 1).unwrap();
            let u = uniform_coefficients(&g, &ab).unwrap();
            assert_abs_diff_eq!(u.beta_sq, 1.0 / (n * (n - 1)) as f64, epsilon = 1e-15);
            assert_eq!(u.coefficients.len(), 1);
        }
        let c6 = Graph::cycle(6).unwrap();
        let u = uniform_coefficients(&c6, &basis_arc_state(&c6, 0, 1).unwrap()).unwrap();
        assert_eq!(u.coefficients.len(), 2);
        assert_abs_diff_eq!(u.beta_sq, 1.0 / 6.0, epsilon = 1e-15);
    }

    #[test]
    fn unnormalized_input_rejected() {
        let g = Graph::complete(4).unwrap();
        let s = &basis_arc_state(&g, 0, 1).unwrap() * 3.0;
        assert!(decompose(&g, &s).is_err());
        assert!(flip_projection(&g, &s).is_err());
    }
}
