use std::collections::VecDeque;

use super::Graph;
use crate::error::{Error, Result};

/// Pairwise edge-disjoint `s`–`t` paths given as vertex sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathFamily {
    pub source: usize,
    pub sink: usize,
    pub paths: Vec<Vec<usize>>,
}

impl PathFamily {
    /// Number of paths, which equals the `s`–`t` edge connectivity.
    pub fn k(&self) -> usize {
        self.paths.len()
    }

    /// Edge count of each path.
    pub fn lengths(&self) -> Vec<usize> {
        self.paths.iter().map(|p| p.len() - 1).collect()
    }

    /// Checks endpoints, adjacency of consecutive vertices and pairwise
    /// edge-disjointness.
    pub fn audit(&self, g: &Graph) -> bool {
        let mut used = vec![false; g.edge_count()];
        for path in &self.paths {
            if path.first() != Some(&self.source) || path.last() != Some(&self.sink) {
                return false;
            }
            for w in path.windows(2) {
                let Some(arc) = g.arc(w[0], w[1]) else {
                    return false;
                };
                let e = arc >> 1;
                if used[e] {
                    return false;
                }
                used[e] = true;
            }
        }
        true
    }
}

struct Residual {
    head: Vec<usize>,
    cap: Vec<i32>,
    cost: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl Residual {
    fn add(&mut self, u: usize, v: usize) {
        let id = self.head.len();
        self.head.extend([v, u]);
        self.cap.extend([1, 0]);
        self.cost.extend([1, -1]);
        self.adj[u].push(id);
        self.adj[v].push(id + 1);
    }

    /// Bellman–Ford (queue based) shortest path in the residual graph.
    fn shortest_path(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let n = self.adj.len();
        let mut dist = vec![i64::MAX; n];
        let mut via = vec![usize::MAX; n];
        let mut queued = vec![false; n];
        let mut queue = VecDeque::from([s]);
        dist[s] = 0;
        queued[s] = true;
        while let Some(u) = queue.pop_front() {
            queued[u] = false;
            for &id in &self.adj[u] {
                if self.cap[id] == 0 {
                    continue;
                }
                let v = self.head[id];
                let nd = dist[u] + self.cost[id];
                if nd < dist[v] {
                    dist[v] = nd;
                    via[v] = id;
                    if !queued[v] {
                        queued[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        if dist[t] == i64::MAX {
            return None;
        }
        let mut arcs = Vec::new();
        let mut v = t;
        while v != s {
            let id = via[v];
            arcs.push(id);
            v = self.head[id ^ 1];
        }
        Some(arcs)
    }
}

/// Maximum family of edge-disjoint `s`–`t` paths.
///
/// Every undirected edge carries unit capacity in both directions. Augmenting
/// along shortest residual paths (unit cost per edge) yields a maximum flow of
/// minimum total length, which decomposes into simple paths.
pub fn edge_disjoint_paths(g: &Graph, s: usize, t: usize) -> Result<PathFamily> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(Error::arg("source and sink must differ"));
    }
    let mut net = Residual {
        head: Vec::new(),
        cap: Vec::new(),
        cost: Vec::new(),
        adj: vec![Vec::new(); g.n()],
    };
    for &(u, v) in g.edges() {
        net.add(u, v);
        net.add(v, u);
    }
    while let Some(path) = net.shortest_path(s, t) {
        for id in path {
            net.cap[id] -= 1;
            net.cap[id ^ 1] += 1;
        }
    }

    // Forward residual ids are 4e (u→v) and 4e + 2 (v→u); flow = 1 − cap.
    let mut next: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let fwd = 1 - net.cap[4 * e];
        let bwd = 1 - net.cap[4 * e + 2];
        match fwd - bwd {
            1 => next[u].push(v),
            -1 => next[v].push(u),
            _ => {}
        }
    }
    for succ in &mut next {
        succ.sort_unstable_by(|a, b| b.cmp(a));
    }
    let mut paths = Vec::new();
    while let Some(first) = next[s].pop() {
        let mut path = vec![s, first];
        let mut cur = first;
        while cur != t {
            cur = next[cur].pop().expect("flow is conserved");
            path.push(cur);
        }
        paths.push(path);
    }
    paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(PathFamily {
        source: s,
        sink: t,
        paths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_connectivity() {
        let g = Graph::complete(4).unwrap();
        for (s, t) in [(0, 1), (2, 3), (3, 0)] {
            let fam = edge_disjoint_paths(&g, s, t).unwrap();
            assert_eq!(fam.k(), 3);
            assert!(fam.audit(&g));
        }
    }

    #[test]
    fn opposite_vertices_of_a_cycle() {
        let g = Graph::cycle(6).unwrap();
        let fam = edge_disjoint_paths(&g, 0, 3).unwrap();
        assert_eq!(fam.lengths(), vec![3, 3]);
        assert!(fam.audit(&g));
    }

    #[test]
    fn same_endpoints_rejected() {
        let g = Graph::cycle(5).unwrap();
        assert!(edge_disjoint_paths(&g, 2, 2).is_err());
        assert!(edge_disjoint_paths(&g, 2, 9).is_err());
    }
}
