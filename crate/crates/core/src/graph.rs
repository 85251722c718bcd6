//! Immutable simple undirected graphs and the edge-subdivision expansion.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex id {id} out of range for a graph with {vertex_count} vertices")]
    OutOfRange { id: usize, vertex_count: usize },
    #[error("edge probability {0} is outside [0, 1]")]
    BadProbability(f64),
}

/// A finite simple undirected graph on the vertex ids `0..n`.
///
/// Adjacency lists are sorted and free of duplicates and self-loops, and
/// `u` is listed under `v` exactly when `v` is listed under `u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an unordered edge list. Repeated edges (in either
    /// orientation) collapse into one.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            for id in [u, v] {
                if id >= vertex_count {
                    return Err(GraphError::OutOfRange { id, vertex_count });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adjacency })
    }

    /// The graph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let adjacency = (0..n)
            .map(|v| (0..n).filter(|&u| u != v).collect())
            .collect();
        Graph { adjacency }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::new(n, &edges).expect("path edges are valid")
    }

    /// Cycle on `n` vertices; `n` must be at least 3.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Self::new(n, &edges).expect("cycle edges are valid")
    }

    /// Star with center 0 and `leaves` leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Self::new(leaves + 1, &edges).expect("star edges are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn degree(&self, v: usize) -> Result<usize, GraphError> {
        self.neighbors(v).map(<[usize]>::len)
    }

    /// Sorted neighbor ids of `v`.
    pub fn neighbors(&self, v: usize) -> Result<&[usize], GraphError> {
        self.adjacency
            .get(v)
            .map(Vec::as_slice)
            .ok_or(GraphError::OutOfRange {
                id: v,
                vertex_count: self.vertex_count(),
            })
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency
            .get(u)
            .is_some_and(|list| list.binary_search(&v).is_ok())
    }

    /// Returns true when every vertex can reach every other one. The empty
    /// graph counts as connected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    stack.push(v);
                }
            }
        }
        reached == n
    }

    /// Replaces every edge `{u, v}` by a fresh vertex `w` adjacent to both
    /// endpoints, so that edge colors can be refined as vertex colors.
    ///
    /// Original vertices keep ids `0..n`. Virtual vertices take ids
    /// `n..n + m` in lexicographic edge order.
    pub fn expand_edges(&self) -> ExpandedGraph {
        let n = self.vertex_count();
        let edges: Vec<(usize, usize)> = self.edges().collect();
        let mut origin: Vec<VertexOrigin> = (0..n).map(VertexOrigin::Original).collect();
        let mut adjacency = vec![Vec::new(); n + edges.len()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            let w = n + i;
            origin.push(VertexOrigin::VirtualEdge(u, v));
            adjacency[u].push(w);
            adjacency[v].push(w);
            adjacency[w] = vec![u, v];
        }
        // Virtual ids are pushed in increasing order, so each list is
        // already sorted.
        ExpandedGraph {
            graph: Graph { adjacency },
            origin,
        }
    }
}

/// Erdős–Rényi `G(n, p)` sample. Each pair `u < v` is visited in
/// lexicographic order and kept with probability `p`; the stream comes from
/// ChaCha8 so the result is the same on every platform.
pub fn random_graph(n: usize, edge_probability: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&edge_probability) {
        return Err(GraphError::BadProbability(edge_probability));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adjacency = vec![Vec::new(); n];
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(edge_probability) {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
    }
    // Pairs are visited with u ascending, then v ascending, so every list
    // is built in sorted order.
    Ok(Graph { adjacency })
}

/// Where a vertex of an [`ExpandedGraph`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexOrigin {
    Original(usize),
    /// Stands for the original edge `{u, v}` with `u < v`.
    VirtualEdge(usize, usize),
}

impl VertexOrigin {
    pub fn is_virtual(&self) -> bool {
        matches!(self, VertexOrigin::VirtualEdge(..))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedGraph {
    pub graph: Graph,
    pub origin: Vec<VertexOrigin>,
}

impl ExpandedGraph {
    /// Number of vertices that were present before expansion.
    pub fn original_vertex_count(&self) -> usize {
        self.origin.iter().filter(|o| !o.is_virtual()).count()
    }

    /// Ids and endpoint pairs of the virtual edge-vertices, in id order.
    pub fn virtual_vertices(&self) -> impl Iterator<Item = (usize, (usize, usize))> + '_ {
        self.origin
            .iter()
            .enumerate()
            .filter_map(|(w, o)| match *o {
                VertexOrigin::VirtualEdge(u, v) => Some((w, (u, v))),
                VertexOrigin::Original(_) => None,
            })
    }

    /// Recovers the original edge set from the virtual vertices.
    pub fn project_edges(&self) -> Vec<(usize, usize)> {
        self.virtual_vertices().map(|(_, e)| e).collect()
    }
}
