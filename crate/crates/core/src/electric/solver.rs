use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{ElectricNetwork, FlowSolution};

/// Reduced Laplacians at or above this many unknowns go to conjugate gradient.
pub const DENSE_SOLVER_LIMIT: usize = 3000;

/// Per-component net injection above this magnitude makes a network infeasible.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-9;

const CG_RELATIVE_TOLERANCE: f64 = 1e-14;

/// Which node of each resistor component is held at potential zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Grounding {
    #[default]
    Lowest,
    Highest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolverKind {
    /// Dense Cholesky below [`DENSE_SOLVER_LIMIT`] unknowns, CG above.
    #[default]
    Auto,
    Dense,
    ConjugateGradient,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    pub grounding: Grounding,
    pub solver: SolverKind,
}

/// Connected components of the resistor graph, labelled by first appearance.
pub(crate) fn resistor_components(net: &ElectricNetwork) -> (usize, Vec<usize>) {
    let mut parent: Vec<usize> = (0..net.node_count).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(x, y) in &net.resistor_edges {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        if rx != ry {
            parent[rx.max(ry)] = rx.min(ry);
        }
    }
    let mut label = vec![usize::MAX; net.node_count];
    let mut count = 0;
    for v in 0..net.node_count {
        let root = find(&mut parent, v);
        if label[root] == usize::MAX {
            label[root] = count;
            count += 1;
        }
        label[v] = label[root];
    }
    (count, label)
}

pub fn solve_network(net: &ElectricNetwork) -> FlowSolution {
    solve_network_with(net, SolveOptions::default())
}

pub fn solve_network_with(net: &ElectricNetwork, opts: SolveOptions) -> FlowSolution {
    let (count, label) = resistor_components(net);
    let mut net_injection = vec![Complex64::new(0.0, 0.0); count];
    for (v, z) in net.injections.iter().enumerate() {
        net_injection[label[v]] += z;
    }
    if net_injection
        .iter()
        .any(|z| z.norm() > FEASIBILITY_TOLERANCE)
    {
        return FlowSolution::infeasible();
    }

    let mut ground = vec![usize::MAX; count];
    for (v, &c) in label.iter().enumerate() {
        match opts.grounding {
            Grounding::Lowest if ground[c] == usize::MAX => ground[c] = v,
            Grounding::Highest => ground[c] = v,
            _ => {}
        }
    }
    let mut index = vec![usize::MAX; net.node_count];
    let mut free = Vec::new();
    for v in 0..net.node_count {
        if ground[label[v]] != v {
            index[v] = free.len();
            free.push(v);
        }
    }

    let dim = free.len();
    let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); dim];
    let mut diag = vec![0.0; dim];
    for &(x, y) in &net.resistor_edges {
        for (p, q) in [(x, y), (y, x)] {
            if index[p] != usize::MAX {
                diag[index[p]] += 1.0;
                if index[q] != usize::MAX {
                    rows[index[p]].push((index[q], -1.0));
                }
            }
        }
    }
    let b_re: Vec<f64> = free.iter().map(|&v| net.injections[v].re).collect();
    let b_im: Vec<f64> = free.iter().map(|&v| net.injections[v].im).collect();

    let dense = match opts.solver {
        SolverKind::Auto => dim < DENSE_SOLVER_LIMIT,
        SolverKind::Dense => true,
        SolverKind::ConjugateGradient => false,
    };
    let (x_re, x_im) = if dim == 0 {
        (Vec::new(), Vec::new())
    } else if dense {
        dense_solve(&rows, &diag, &b_re, &b_im)
    } else {
        (cg_solve(&rows, &diag, &b_re), cg_solve(&rows, &diag, &b_im))
    };

    let mut potentials = vec![Complex64::new(0.0, 0.0); net.node_count];
    for (i, &v) in free.iter().enumerate() {
        potentials[v] = Complex64::new(x_re[i], x_im[i]);
    }
    let currents: Vec<Complex64> = net
        .resistor_edges
        .iter()
        .map(|&(x, y)| potentials[x] - potentials[y])
        .collect();
    let power = currents.iter().map(|i| i.norm_sqr()).sum();
    FlowSolution {
        feasible: true,
        currents,
        potentials,
        power,
    }
}

fn dense_solve(
    rows: &[Vec<(usize, f64)>],
    diag: &[f64],
    b_re: &[f64],
    b_im: &[f64],
) -> (Vec<f64>, Vec<f64>) {
    let dim = diag.len();
    let mut l = DMatrix::<f64>::zeros(dim, dim);
    for i in 0..dim {
        l[(i, i)] = diag[i];
        for &(j, w) in &rows[i] {
            l[(i, j)] += w;
        }
    }
    let chol = l
        .cholesky()
        .expect("grounded Laplacian of a connected component is positive definite");
    let mut rhs = DMatrix::<f64>::zeros(dim, 2);
    rhs.set_column(0, &DVector::from_column_slice(b_re));
    rhs.set_column(1, &DVector::from_column_slice(b_im));
    let x = chol.solve(&rhs);
    (
        x.column(0).iter().copied().collect(),
        x.column(1).iter().copied().collect(),
    )
}

/// Jacobi-preconditioned conjugate gradient on the grounded Laplacian.
fn cg_solve(rows: &[Vec<(usize, f64)>], diag: &[f64], b: &[f64]) -> Vec<f64> {
    let dim = diag.len();
    let apply = |x: &[f64], out: &mut [f64]| {
        for i in 0..dim {
            let mut s = diag[i] * x[i];
            for &(j, w) in &rows[i] {
                s += w * x[j];
            }
            out[i] = s;
        }
    };
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();

    let b_norm = dot(b, b).sqrt();
    let mut x = vec![0.0; dim];
    if b_norm == 0.0 {
        return x;
    }
    let mut r = b.to_vec();
    let mut z: Vec<f64> = r.iter().zip(diag).map(|(r, d)| r / d).collect();
    let mut p = z.clone();
    let mut ap = vec![0.0; dim];
    let mut rz = dot(&r, &z);
    for _ in 0..10 * dim + 100 {
        apply(&p, &mut ap);
        let step = rz / dot(&p, &ap);
        for i in 0..dim {
            x[i] += step * p[i];
            r[i] -= step * ap[i];
        }
        if dot(&r, &r).sqrt() <= CG_RELATIVE_TOLERANCE * b_norm {
            break;
        }
        for i in 0..dim {
            z[i] = r[i] / diag[i];
        }
        let rz_next = dot(&r, &z);
        let beta = rz_next / rz;
        rz = rz_next;
        for i in 0..dim {
            p[i] = z[i] + beta * p[i];
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(len: usize) -> ElectricNetwork {
        let mut injections = vec![Complex64::new(0.0, 0.0); len + 1];
        injections[0] = Complex64::new(1.0, 0.0);
        injections[len] = Complex64::new(-1.0, 0.0);
        ElectricNetwork {
            node_count: len + 1,
            resistor_edges: (0..len).map(|i| (i, i + 1)).collect(),
            injections,
        }
    }

    #[test]
    fn series_path() {
        let sol = solve_network(&path(5));
        assert!(sol.feasible);
        assert!((sol.power - 5.0).abs() < 1e-12);
        assert!(((sol.potentials[0] - sol.potentials[5]).re - 5.0).abs() < 1e-12);
        assert!(sol.currents.iter().all(|i| (i.re - 1.0).abs() < 1e-12));
    }

    #[test]
    fn dense_and_cg_agree() {
        let mut net = path(40);
        net.resistor_edges.push((0, 20));
        net.resistor_edges.push((5, 33));
        net.injections[7] = Complex64::new(0.0, 0.5);
        net.injections[30] = Complex64::new(0.0, -0.5);
        let dense = solve_network_with(
            &net,
            SolveOptions {
                solver: SolverKind::Dense,
                ..Default::default()
            },
        );
        let cg = solve_network_with(
            &net,
            SolveOptions {
                solver: SolverKind::ConjugateGradient,
                grounding: Grounding::Highest,
            },
        );
        for (a, b) in dense.currents.iter().zip(&cg.currents) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn unbalanced_component_is_infeasible() {
        let mut net = path(3);
        net.injections[3] = Complex64::new(0.0, 0.0);
        let sol = solve_network(&net);
        assert!(!sol.feasible);
        assert!(sol.power.is_infinite());
    }

    #[test]
    fn parallel_resistors_halve_resistance() {
        let net = ElectricNetwork {
            node_count: 2,
            resistor_edges: vec![(0, 1), (0, 1)],
            injections: vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
        };
        assert!((solve_network(&net).power - 0.5).abs() < 1e-12);
    }
}
