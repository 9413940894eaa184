//! Regular graphs with a canonical arc (directed-edge) indexing.
//!
//! Edges are stored as `(u, v)` with `u < v`, sorted lexicographically. Arc
//! `2·e` is `(u, v)` and arc `2·e + 1` is `(v, u)`, so reversing an arc is a
//! single bit flip. The walk's state space is indexed by these arc ids.

mod bipartite;
mod families;
mod paths;

use std::collections::hash_map::DefaultHasher;
use std::collections::VecDeque;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};
use std::path::Path;

use crate::error::{Error, Result};

pub use bipartite::{bipartite_double, bipartite_partition, BipartiteDouble, Bipartition};
pub use families::{build_graph, GraphFamily};
pub use paths::{edge_disjoint_paths, PathFamily};

#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    degree: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    out_arcs: Vec<Vec<usize>>,
    key: u64,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a connected, simple, regular graph from an unordered edge list.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::build(n, edges, true)
    }

    /// Same validation as [`Graph::from_edges`] except connectivity, used for
    /// bipartite doubles of bipartite graphs.
    pub(crate) fn build(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        require_connected: bool,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::graph(format!("need at least 2 vertices, got {n}")));
        }
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::graph(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::graph(format!("self-loop at vertex {u}")));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::graph(format!(
                "parallel edge between {} and {}",
                w[0].0, w[0].1
            )));
        }

        let mut adjacency = vec![Vec::new(); n];
        let mut out_arcs = vec![Vec::new(); n];
        for (e, &(u, v)) in normalized.iter().enumerate() {
            adjacency[u].push((v, 2 * e));
            adjacency[v].push((u, 2 * e + 1));
        }
        let degree = adjacency[0].len();
        if degree == 0 {
            return Err(Error::graph("vertex 0 is isolated"));
        }
        for (u, nbrs) in adjacency.iter().enumerate() {
            if nbrs.len() != degree {
                return Err(Error::graph(format!(
                    "not regular: vertex {u} has degree {}, vertex 0 has degree {degree}",
                    nbrs.len()
                )));
            }
        }
        let adjacency: Vec<Vec<usize>> = adjacency
            .into_iter()
            .zip(out_arcs.iter_mut())
            .map(|(mut nbrs, arcs)| {
                nbrs.sort_unstable();
                arcs.extend(nbrs.iter().map(|&(_, a)| a));
                nbrs.into_iter().map(|(v, _)| v).collect()
            })
            .collect();

        let mut hasher = DefaultHasher::new();
        n.hash(&mut hasher);
        normalized.hash(&mut hasher);
        let graph = Graph {
            n,
            degree,
            edges: normalized,
            adjacency,
            out_arcs,
            key: hasher.finish(),
        };
        if require_connected && !graph.is_connected() {
            return Err(Error::graph("graph is disconnected"));
        }
        Ok(graph)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn arc_count(&self) -> usize {
        2 * self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in edge-id order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of `u`.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    /// Arc ids leaving `u`, parallel to [`Graph::neighbors`].
    pub fn out_arcs(&self, u: usize) -> &[usize] {
        &self.out_arcs[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.arc(u, v).is_some()
    }

    /// Arc id of `(u, v)`, if `{u, v}` is an edge.
    pub fn arc(&self, u: usize, v: usize) -> Option<usize> {
        let nbrs = self.adjacency.get(u)?;
        nbrs.binary_search(&v).ok().map(|i| self.out_arcs[u][i])
    }

    /// `(tail, head)` of an arc.
    pub fn arc_endpoints(&self, arc: usize) -> (usize, usize) {
        let (u, v) = self.edges[arc >> 1];
        if arc & 1 == 0 {
            (u, v)
        } else {
            (v, u)
        }
    }

    pub fn reverse_arc(&self, arc: usize) -> usize {
        arc ^ 1
    }

    /// The Grover coin on a degree-1 graph is the identity; such graphs are
    /// allowed but carry no interesting dynamics.
    pub fn is_degenerate(&self) -> bool {
        self.degree == 1
    }

    /// Fingerprint used to bind state vectors to the graph that indexes them.
    pub fn key(&self) -> u64 {
        self.key
    }

    /// Component label for every vertex, labels assigned in order of the
    /// smallest vertex of each component.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    if label[v] == usize::MAX {
                        label[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn is_connected(&self) -> bool {
        self.components().0 == 1
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Parses the whitespace-separated edge list format. Blank lines and lines
    /// starting with `#` are skipped; the vertex count is `max id + 1`.
    pub fn from_edge_list_str(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut max_id = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let mut next = |what: &str| -> Result<usize> {
                let tok = fields.next().ok_or_else(|| Error::Parse {
                    line: idx + 1,
                    message: format!("missing {what} vertex"),
                })?;
                tok.parse().map_err(|_| Error::Parse {
                    line: idx + 1,
                    message: format!("invalid vertex id {tok:?}"),
                })
            };
            let u = next("first")?;
            let v = next("second")?;
            if fields.next().is_some() {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: "expected exactly two vertex ids".into(),
                });
            }
            max_id = max_id.max(u).max(v);
            edges.push((u, v));
        }
        if edges.is_empty() {
            return Err(Error::graph("edge list is empty"));
        }
        Self::from_edges(max_id + 1, edges)
    }

    pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_edge_list_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_edge_list_string(&self) -> String {
        let mut out = format!("# n={} d={} m={}\n", self.n, self.degree, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn arc_indexing_is_bijective() {
        let g = k4();
        assert_eq!(g.arc_count(), 12);
        let mut seen = vec![false; g.arc_count()];
        for u in 0..g.n() {
            for (&v, &a) in g.neighbors(u).iter().zip(g.out_arcs(u)) {
                assert_eq!(g.arc_endpoints(a), (u, v));
                assert_eq!(g.arc(u, v), Some(a));
                assert_eq!(g.arc_endpoints(g.reverse_arc(a)), (v, u));
                assert!(!seen[a]);
                seen[a] = true;
            }
        }
        assert!(seen.into_iter().all(|s| s));
    }

    #[test]
    fn rejects_invalid_edge_sets() {
        assert!(matches!(
            Graph::from_edges(3, [(0, 0), (1, 2)]),
            Err(Error::InvalidGraph(m)) if m.contains("self-loop")
        ));
        assert!(matches!(
            Graph::from_edges(2, [(0, 1), (1, 0)]),
            Err(Error::InvalidGraph(m)) if m.contains("parallel")
        ));
        assert!(matches!(
            Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]),
            Err(Error::InvalidGraph(m)) if m.contains("not regular")
        ));
        assert!(matches!(
            Graph::from_edges(4, [(0, 1), (2, 3)]),
            Err(Error::InvalidGraph(m)) if m.contains("disconnected")
        ));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = k4();
        let text = g.to_edge_list_string();
        assert_eq!(Graph::from_edge_list_str(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_reports_bad_lines() {
        let err = Graph::from_edge_list_str("# c\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = Graph::from_edge_list_str("0 1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn k2_is_degenerate_but_valid() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert!(g.is_degenerate());
        assert_eq!(g.arc_count(), 2);
    }
}
