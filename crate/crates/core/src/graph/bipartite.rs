use std::collections::VecDeque;

use super::Graph;

/// Two-coloring of a bipartite graph; `partite_x` always contains vertex 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub partite_x: Vec<usize>,
    pub partite_y: Vec<usize>,
    in_x: Vec<bool>,
}

impl Bipartition {
    pub fn in_x(&self, v: usize) -> bool {
        self.in_x[v]
    }
}

/// BFS 2-coloring. Returns `None` when the graph has an odd cycle.
pub fn bipartite_partition(g: &Graph) -> Option<Bipartition> {
    let mut color: Vec<Option<bool>> = vec![None; g.n()];
    let mut queue = VecDeque::new();
    for start in 0..g.n() {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(true);
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for &v in g.neighbors(u) {
                match color[v] {
                    None => {
                        color[v] = Some(!cu);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let in_x: Vec<bool> = color.into_iter().map(|c| c.unwrap()).collect();
    let (partite_x, partite_y) = (0..g.n()).partition(|&v| in_x[v]);
    Some(Bipartition {
        partite_x,
        partite_y,
        in_x,
    })
}

/// Bipartite double `G_b` of a graph `G`.
///
/// Vertex `v_out` is `v` and `v_in` is `n + v`. Every arc `(u, v)` of `G`
/// becomes the edge `{u_out, v_in}`. When `G` is bipartite the double is two
/// disjoint copies of `G`; the graph is kept as-is and components are labelled.
#[derive(Debug, Clone)]
pub struct BipartiteDouble {
    pub graph: Graph,
    base_n: usize,
    arc_edge: Vec<usize>,
    component_count: usize,
    component: Vec<usize>,
}

impl BipartiteDouble {
    pub fn out_vertex(&self, v: usize) -> usize {
        v
    }

    pub fn in_vertex(&self, v: usize) -> usize {
        self.base_n + v
    }

    pub fn base_n(&self) -> usize {
        self.base_n
    }

    /// Edge id in the double corresponding to arc `arc` of the base graph.
    pub fn edge_for_arc(&self, arc: usize) -> usize {
        self.arc_edge[arc]
    }

    /// Arc id `(u_out → v_in)` in the double for base arc `(u, v)`.
    pub fn double_arc_for_arc(&self, arc: usize) -> usize {
        2 * self.arc_edge[arc]
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn component(&self, v: usize) -> usize {
        self.component[v]
    }
}

pub fn bipartite_double(g: &Graph) -> BipartiteDouble {
    let n = g.n();
    let pairs: Vec<(usize, usize)> = (0..g.arc_count())
        .map(|a| {
            let (u, v) = g.arc_endpoints(a);
            (u, n + v)
        })
        .collect();
    let graph = Graph::build(2 * n, pairs.iter().copied(), false)
        .expect("double of a valid graph is simple and regular");
    // (u, n + v) already has u < n + v, so edge ids follow the sorted pairs.
    let arc_edge = pairs
        .iter()
        .map(|p| graph.edges().binary_search(p).expect("edge present"))
        .collect();
    let (component_count, component) = graph.components();
    BipartiteDouble {
        graph,
        base_n: n,
        arc_edge,
        component_count,
        component,
    }
}
