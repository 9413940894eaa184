//! Oscillation analysis: splitting a starting state into flip, uniform and
//! remainder parts, the overlap lower bounds that follow from the split, the
//! measured overlaps they bound, and a dense oracle for `ker(U² − I)`.

mod decomposition;
mod eigenspace;

use serde::Serialize;

use crate::error::Result;
use crate::graph::Graph;
use crate::walk::{flip_transform, walk_step, ArcState};

pub use decomposition::{
    decompose, flip_projection, is_flip_state, uniform_basis, uniform_coefficients, Decomposition,
    FlipProjector, UniformProjection,
};
pub use eigenspace::{
    basis_projector, one_eigenspace_u2, one_eigenspace_u2_with_ceiling, oscillatory_projector,
    walk_matrix, DENSE_ORACLE_CEILING,
};

/// Lower bounds on `|⟨ψ0|U^{2t}|ψ0⟩|` and `|⟨ψ̄0|U^{2t+1}|ψ0⟩|`.
///
/// Negative values are kept as-is; they mean the bound is vacuous.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub even_bound: f64,
    pub odd_bound: f64,
}

impl BoundReport {
    pub fn even_vacuous(&self) -> bool {
        self.even_bound <= 0.0
    }

    pub fn odd_vacuous(&self) -> bool {
        self.odd_bound <= 0.0
    }
}

/// `even[t] = |⟨ψ0|U^{2t}|ψ0⟩|`, `odd[t] = |⟨ψ̄0|U^{2t+1}|ψ0⟩|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapSeries {
    pub even_overlaps: Vec<f64>,
    pub odd_overlaps: Vec<f64>,
}

impl OverlapSeries {
    /// Measured overlap after `t` steps (even or odd series by parity).
    pub fn at_step(&self, t: usize) -> Option<f64> {
        if t.is_multiple_of(2) {
            self.even_overlaps.get(t / 2).copied()
        } else {
            self.odd_overlaps.get(t / 2).copied()
        }
    }

    pub fn steps(&self) -> usize {
        self.even_overlaps.len() + self.odd_overlaps.len()
    }
}

pub fn oscillation_bounds(dec: &Decomposition) -> BoundReport {
    BoundReport {
        even_bound: 2.0 * (dec.alpha_sq + dec.beta_sq) - 1.0,
        odd_bound: 2.0 * dec.alpha_sq.max(dec.beta_sq) - 1.0,
    }
}

/// Overlaps for every step `0..=t_max`, from one evolution sweep.
pub fn measured_overlaps(g: &Graph, psi0: &ArcState, t_max: usize) -> Result<OverlapSeries> {
    let psi0 = psi0.require_normalized()?;
    let flipped = flip_transform(g, &psi0);
    let mut series = OverlapSeries {
        even_overlaps: Vec::with_capacity(t_max / 2 + 1),
        odd_overlaps: Vec::with_capacity(t_max.div_ceil(2)),
    };
    let mut psi = psi0.clone();
    for t in 0..=t_max {
        if t > 0 {
            psi = walk_step(g, &psi);
        }
        if t % 2 == 0 {
            series.even_overlaps.push(psi0.inner_unchecked(&psi).norm());
        } else {
            series
                .odd_overlaps
                .push(flipped.inner_unchecked(&psi).norm());
        }
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::basis_arc_state;
    use approx::assert_abs_diff_eq;

    #[test]
    fn complete_graph_bounds() {
        for n in [5usize, 8, 20] {
            let g = Graph::complete(n).unwrap();
            let dec = decompose(&g, &basis_arc_state(&g, 0, 1).unwrap()).unwrap();
            let b = oscillation_bounds(&dec);
            let nf = n as f64;
            assert_abs_diff_eq!(b.even_bound, 1.0 - 4.0 / nf, epsilon = 1e-10);
            assert_abs_diff_eq!(
                b.odd_bound,
                1.0 - 2.0 / (nf - 1.0) - 2.0 / nf,
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn negative_bounds_are_not_clamped() {
        let g = Graph::complete(3).unwrap();
        let dec = decompose(&g, &basis_arc_state(&g, 0, 1).unwrap()).unwrap();
        let b = oscillation_bounds(&dec);
        assert!(b.even_bound < 0.0 && b.even_vacuous());
        assert!(b.odd_bound < 0.0 && b.odd_vacuous());
    }

    #[test]
    fn overlaps_on_k100() {
        let g = Graph::complete(100).unwrap();
        let s = measured_overlaps(&g, &basis_arc_state(&g, 0, 1).unwrap(), 9).unwrap();
        assert_eq!(s.even_overlaps.len(), 5);
        assert_eq!(s.odd_overlaps.len(), 5);
        for o in &s.odd_overlaps {
            assert_abs_diff_eq!(*o, 97.0 / 99.0, epsilon = 1e-12);
        }
        assert_eq!(s.at_step(0), Some(1.0));
        let start = measured_overlaps(&g, &basis_arc_state(&g, 0, 1).unwrap(), 0).unwrap();
        assert_eq!((start.steps(), start.at_step(0)), (1, Some(1.0)));
    }
}
