use std::collections::{BTreeMap, HashSet};
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

const RANDOM_REGULAR_ATTEMPTS: usize = 1000;

/// Graph families the library can construct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFamily {
    /// `K_n`, degree `n − 1`.
    Complete {
        n: usize,
    },
    /// Balanced `K_{n,n}`; vertices `0..n` on one side, `n..2n` on the other.
    CompleteBipartite {
        n: usize,
    },
    /// `Q_dim` on `2^dim` vertices labelled by bit strings.
    Hypercube {
        dim: usize,
    },
    /// Periodic square lattice with `side^dim` vertices, degree `2·dim`.
    Torus {
        dim: usize,
        side: usize,
    },
    Cycle {
        n: usize,
    },
    /// Uniform-ish random `degree`-regular simple connected graph.
    RandomRegular {
        n: usize,
        degree: usize,
        seed: u64,
    },
    EdgeList {
        path: PathBuf,
    },
}

pub fn build_graph(family: &GraphFamily) -> Result<Graph> {
    match *family {
        GraphFamily::Complete { n } => complete(n),
        GraphFamily::CompleteBipartite { n } => complete_bipartite(n),
        GraphFamily::Hypercube { dim } => hypercube(dim),
        GraphFamily::Torus { dim, side } => torus(dim, side),
        GraphFamily::Cycle { n } => cycle(n),
        GraphFamily::RandomRegular { n, degree, seed } => random_regular(n, degree, seed),
        GraphFamily::EdgeList { ref path } => Graph::load_edge_list(path),
    }
}

impl Graph {
    pub fn complete(n: usize) -> Result<Graph> {
        complete(n)
    }

    pub fn complete_bipartite(n: usize) -> Result<Graph> {
        complete_bipartite(n)
    }

    pub fn hypercube(dim: usize) -> Result<Graph> {
        hypercube(dim)
    }

    pub fn torus(dim: usize, side: usize) -> Result<Graph> {
        torus(dim, side)
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        cycle(n)
    }

    pub fn random_regular(n: usize, degree: usize, seed: u64) -> Result<Graph> {
        random_regular(n, degree, seed)
    }
}

fn complete(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::graph(format!(
            "complete graph needs N >= 2, got {n}"
        )));
    }
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

fn complete_bipartite(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::graph("complete bipartite graph needs n >= 1"));
    }
    Graph::from_edges(2 * n, (0..n).flat_map(|u| (n..2 * n).map(move |v| (u, v))))
}

fn hypercube(dim: usize) -> Result<Graph> {
    if dim < 1 {
        return Err(Error::graph("hypercube needs dim >= 1"));
    }
    if dim > 24 {
        return Err(Error::graph(format!("hypercube dim {dim} is too large")));
    }
    let n = 1usize << dim;
    Graph::from_edges(
        n,
        (0..n).flat_map(|u| {
            (0..dim)
                .map(move |b| (u, u ^ (1 << b)))
                .filter(|&(u, v)| u < v)
        }),
    )
}

fn torus(dim: usize, side: usize) -> Result<Graph> {
    if dim < 1 {
        return Err(Error::graph("torus needs dim >= 1"));
    }
    if side < 3 {
        return Err(Error::graph(format!(
            "torus needs side >= 3 (side {side} creates parallel edges or loops)"
        )));
    }
    let n = (0..dim)
        .try_fold(1usize, |acc, _| acc.checked_mul(side))
        .filter(|&n| n <= 1 << 24)
        .ok_or_else(|| Error::graph("torus is too large"))?;
    let mut edges = Vec::with_capacity(n * dim);
    for v in 0..n {
        let mut stride = 1;
        for _ in 0..dim {
            let coord = (v / stride) % side;
            let next = if coord + 1 == side {
                v - coord * stride
            } else {
                v + stride
            };
            edges.push((v, next));
            stride *= side;
        }
    }
    Graph::from_edges(n, edges)
}

fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::graph(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|u| (u, (u + 1) % n)))
}

/// Pairing-model generator: stubs are shuffled and paired, pairs that would
/// form a loop or a repeated edge go back into the pool, and the whole attempt
/// restarts when no admissible pair is left. Disconnected results are
/// rejected as well.
fn random_regular(n: usize, degree: usize, seed: u64) -> Result<Graph> {
    if degree < 3 {
        return Err(Error::graph(format!(
            "random regular graph needs d >= 3, got {degree}"
        )));
    }
    if degree >= n {
        return Err(Error::graph(format!(
            "degree {degree} must be below n = {n}"
        )));
    }
    if !(n * degree).is_multiple_of(2) {
        return Err(Error::graph(format!("n·d = {} must be even", n * degree)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_REGULAR_ATTEMPTS {
        let Some(edges) = try_pairing(n, degree, &mut rng) else {
            continue;
        };
        match Graph::from_edges(n, edges) {
            Ok(g) => return Ok(g),
            Err(Error::InvalidGraph(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::graph(format!(
        "no connected {degree}-regular graph on {n} vertices after {RANDOM_REGULAR_ATTEMPTS} attempts"
    )))
}

fn try_pairing(n: usize, degree: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut edges: HashSet<(usize, usize)> = HashSet::with_capacity(n * degree / 2);
    let mut stubs: Vec<usize> = (0..n)
        .flat_map(|v| std::iter::repeat_n(v, degree))
        .collect();
    while !stubs.is_empty() {
        let mut leftover: BTreeMap<usize, usize> = BTreeMap::new();
        stubs.shuffle(rng);
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a != b && edges.insert((a, b)) {
                continue;
            }
            *leftover.entry(a).or_default() += 1;
            *leftover.entry(b).or_default() += 1;
        }
        let open: Vec<usize> = leftover.keys().copied().collect();
        let admissible = open.iter().enumerate().any(|(i, &a)| {
            open[i + 1..]
                .iter()
                .any(|&b| !edges.contains(&(a.min(b), a.max(b))))
        });
        if !open.is_empty() && !admissible {
            return None;
        }
        stubs = leftover
            .into_iter()
            .flat_map(|(v, c)| std::iter::repeat_n(v, c))
            .collect();
    }
    let mut edges: Vec<_> = edges.into_iter().collect();
    edges.sort_unstable();
    Some(edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!((k4.n(), k4.edge_count(), k4.degree()), (4, 6, 3));
        let q3 = Graph::hypercube(3).unwrap();
        assert_eq!((q3.n(), q3.edge_count(), q3.degree()), (8, 12, 3));
        let t = Graph::torus(2, 4).unwrap();
        assert_eq!((t.n(), t.degree(), t.edge_count()), (16, 4, 32));
        let k33 = Graph::complete_bipartite(3).unwrap();
        assert_eq!((k33.n(), k33.degree(), k33.edge_count()), (6, 3, 9));
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!((c5.n(), c5.degree()), (5, 2));
        assert_eq!(Graph::torus(1, 7).unwrap(), Graph::cycle(7).unwrap());
    }

    #[test]
    fn constraint_violations_are_named() {
        let msg = |r: Result<Graph>| match r {
            Err(Error::InvalidGraph(m)) => m,
            other => panic!("expected construction error, got {other:?}"),
        };
        assert!(msg(Graph::torus(2, 2)).contains("side >= 3"));
        assert!(msg(Graph::complete(1)).contains("N >= 2"));
        assert!(msg(Graph::random_regular(7, 3, 1)).contains("even"));
        assert!(msg(Graph::random_regular(10, 2, 1)).contains("d >= 3"));
        assert!(msg(Graph::hypercube(0)).contains("dim >= 1"));
        assert!(msg(Graph::cycle(2)).contains("n >= 3"));
    }

    #[test]
    fn random_regular_is_seed_reproducible() {
        let a = Graph::random_regular(30, 5, 7).unwrap();
        let b = Graph::random_regular(30, 5, 7).unwrap();
        let c = Graph::random_regular(30, 5, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.degree(), 5);
        assert!(a.is_connected());
    }

    #[test]
    fn random_regular_handles_high_degree() {
        let g = Graph::random_regular(100, 16, 3).unwrap();
        assert_eq!(g.degree(), 16);
        assert_eq!(g.edge_count(), 800);
    }
}
