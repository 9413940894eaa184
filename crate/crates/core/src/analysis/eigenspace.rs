//! Dense oracle for the exact oscillatory subspace `ker(U² − I)`.

use nalgebra::DMatrix;

use super::decomposition::{uniform_basis, FlipProjector};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::walk::ArcState;

pub const DENSE_ORACLE_CEILING: usize = 2000;

const SINGULAR_VALUE_THRESHOLD: f64 = 1e-9;

/// The walk operator as a dense real matrix; column `a` is `U|a⟩`.
pub fn walk_matrix(g: &Graph) -> DMatrix<f64> {
    let m = g.arc_count();
    let d = g.degree() as f64;
    let mut u = DMatrix::zeros(m, m);
    for a in 0..m {
        let (tail, _) = g.arc_endpoints(a);
        for &b in g.out_arcs(tail) {
            u[(b ^ 1, a)] = 2.0 / d - if a == b { 1.0 } else { 0.0 };
        }
    }
    u
}

pub fn one_eigenspace_u2(g: &Graph) -> Result<Vec<ArcState>> {
    one_eigenspace_u2_with_ceiling(g, DENSE_ORACLE_CEILING)
}

/// Orthonormal basis of `ker(U² − I)` from the right singular vectors of
/// `U² − I` whose singular values fall below `1e-9`.
pub fn one_eigenspace_u2_with_ceiling(g: &Graph, ceiling: usize) -> Result<Vec<ArcState>> {
    let m = g.arc_count();
    if m > ceiling {
        return Err(Error::Capacity { dim: m, ceiling });
    }
    let u = walk_matrix(g);
    let residual = &u * &u - DMatrix::<f64>::identity(m, m);
    let svd = residual.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    Ok(svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= SINGULAR_VALUE_THRESHOLD)
        .map(|(i, _)| {
            let row: Vec<f64> = v_t.row(i).iter().copied().collect();
            ArcState::from_real(g, &row).expect("length matches arc count")
        })
        .collect())
}

/// `Σ |b⟩⟨b|` over real orthonormal vectors.
pub fn basis_projector(basis: &[ArcState], dim: usize) -> DMatrix<f64> {
    let mut p = DMatrix::zeros(dim, dim);
    for b in basis {
        let v = nalgebra::DVector::from_iterator(dim, b.amplitudes().iter().map(|z| z.re));
        p += &v * v.transpose();
    }
    p
}

/// Projector onto (flip subspace) ⊕ (uniform states), built from the
/// indicator basis rather than from `U`.
pub fn oscillatory_projector(g: &Graph) -> DMatrix<f64> {
    let m = g.arc_count();
    let flip = FlipProjector::new(g);
    let mut p = DMatrix::<f64>::identity(m, m);
    for q in flip.indicator_basis() {
        let v = nalgebra::DVector::from_column_slice(q);
        p -= &v * v.transpose();
    }
    p + basis_projector(&uniform_basis(g), m)
}
