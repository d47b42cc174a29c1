//! Simple undirected graphs on the vertex set `1..=n`.
//!
//! A [`Graph`] is immutable once built. Every operation that changes the
//! structure (deletion, contraction, relabeling) returns a new value.

mod connectivity;
mod io;
mod iso;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use connectivity::{biconnected_blocks, is_k_connected, local_connectivity};
pub use io::{parse_edge_list, to_edge_list};
pub use iso::{are_isomorphic, find_isomorphism, wl_hash};

/// Vertices are 1-based throughout.
pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: Vertex, n: usize },
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("no such edge {0}")]
    NoSuchEdge(Edge),
    #[error("malformed edge list: {0}")]
    Parse(String),
}

/// An unordered vertex pair, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    /// Normalizes the endpoint order. Loops are representable here and
    /// rejected when the edge is inserted into a graph.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn other(&self, x: Vertex) -> Option<Vertex> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn touches(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// Shared endpoint of two distinct edges, if any.
    pub fn common_vertex(&self, other: &Edge) -> Option<Vertex> {
        if self == other {
            return None;
        }
        [self.u, self.v].into_iter().find(|&x| other.touches(x))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (a, b) in edges {
            for x in [a, b] {
                if x == 0 || x > n {
                    return Err(GraphError::VertexOutOfRange { v: x, n });
                }
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            adj[a - 1].push(b);
            adj[b - 1].push(a);
            m += 1;
        }
        for (i, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(Edge::new(i + 1, w[0])));
            }
        }
        Ok(Graph { adj, m })
    }

    /// Builds from edges that are known to be valid; duplicates are merged
    /// and loops dropped. Used by the contraction and generator code paths.
    pub(crate) fn from_edge_set(n: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let set: BTreeSet<Edge> = edges.into_iter().filter(|e| e.u != e.v).collect();
        Graph::from_edges(n, set.into_iter().map(|e| (e.u, e.v)))
            .expect("edge set is loop-free and deduplicated")
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_edge_set(
            n,
            (1..=n).flat_map(|u| (u + 1..=n).map(move |v| Edge::new(u, v))),
        )
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::from_edge_set(n, (1..=n).map(|i| Edge::new(i, i % n + 1)))
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edge_set(n, (1..n).map(|i| Edge::new(i, i + 1)))
    }

    /// `K_{a,b}` with classes `1..=a` and `a+1..=a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Graph::from_edge_set(
            a + b,
            (1..=a).flat_map(|u| (a + 1..=a + b).map(move |v| Edge::new(u, v))),
        )
    }

    /// Wheel on `n` vertices: rim `1..n` and hub `n`.
    pub fn wheel(n: usize) -> Self {
        assert!(n >= 4, "a wheel needs at least 4 vertices");
        let rim = n - 1;
        Graph::from_edge_set(
            n,
            (1..=rim)
                .map(|i| Edge::new(i, i % rim + 1))
                .chain((1..=rim).map(|i| Edge::new(i, n))),
        )
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| Edge::new(i + 1, (i + 1) % 5 + 1));
        let spokes = (0..5).map(|i| Edge::new(i + 1, i + 6));
        let inner = (0..5).map(|i| Edge::new(i + 6, (i + 2) % 5 + 6));
        Graph::from_edge_set(10, outer.chain(spokes).chain(inner))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<Vertex> {
        1..=self.n()
    }

    /// Edges in canonical (sorted) order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, list)| {
            let u = i + 1;
            list.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| Edge { u, v })
        })
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v - 1]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v - 1].len()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        if a == 0 || b == 0 || a > self.n() || b > self.n() {
            return false;
        }
        self.adj[a - 1].binary_search(&b).is_ok()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    pub fn delete_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        if !self.contains(e) {
            return Err(GraphError::NoSuchEdge(e));
        }
        let mut g = self.clone();
        g.adj[e.u - 1].retain(|&x| x != e.v);
        g.adj[e.v - 1].retain(|&x| x != e.u);
        g.m -= 1;
        Ok(g)
    }

    pub fn delete_edges(&self, edges: &[Edge]) -> Result<Graph, GraphError> {
        edges.iter().try_fold(self.clone(), |g, &e| g.delete_edge(e))
    }

    pub fn add_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        for x in [e.u, e.v] {
            if x == 0 || x > self.n() {
                return Err(GraphError::VertexOutOfRange { v: x, n: self.n() });
            }
        }
        if e.u == e.v {
            return Err(GraphError::Loop(e.u));
        }
        if self.contains(e) {
            return Err(GraphError::DuplicateEdge(e));
        }
        let mut g = self.clone();
        for (x, y) in [(e.u, e.v), (e.v, e.u)] {
            let list = &mut g.adj[x - 1];
            let pos = list.binary_search(&y).unwrap_err();
            list.insert(pos, y);
        }
        g.m += 1;
        Ok(g)
    }

    /// Contracts `e`, dropping the loop and merging parallel edges.
    ///
    /// The merged vertex keeps the smaller label; every vertex above the
    /// larger endpoint shifts down by one.
    pub fn contract_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        if !self.contains(e) {
            return Err(GraphError::NoSuchEdge(e));
        }
        let (keep, gone) = (e.u, e.v);
        let relabel = |x: Vertex| -> Vertex {
            if x == gone {
                keep
            } else if x > gone {
                x - 1
            } else {
                x
            }
        };
        Ok(Graph::from_edge_set(
            self.n() - 1,
            self.edges().map(|f| Edge::new(relabel(f.u), relabel(f.v))),
        ))
    }

    /// Removes the given vertices and compacts the remaining labels in order.
    pub fn remove_vertices(&self, gone: &[Vertex]) -> Graph {
        let mut keep = vec![true; self.n() + 1];
        for &v in gone {
            keep[v] = false;
        }
        let mut label = vec![0; self.n() + 1];
        let mut next = 0;
        for v in self.vertices() {
            if keep[v] {
                next += 1;
                label[v] = next;
            }
        }
        Graph::from_edge_set(
            next,
            self.edges()
                .filter(|e| keep[e.u] && keep[e.v])
                .map(|e| Edge::new(label[e.u], label[e.v])),
        )
    }

    /// Applies `perm` where `perm[v - 1]` is the new label of `v`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n(), "permutation length mismatch");
        Graph::from_edge_set(
            self.n(),
            self.edges().map(|e| Edge::new(perm[e.u - 1], perm[e.v - 1])),
        )
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        self.component_of(1).len() == self.n()
    }

    /// Vertices reachable from `start`, in BFS order.
    pub fn component_of(&self, start: Vertex) -> Vec<Vertex> {
        let mut seen = vec![false; self.n() + 1];
        let mut order = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        order
    }

    /// Two-colouring by BFS; `Some((class_a, class_b))` when bipartite.
    /// The class containing vertex 1 comes first; both lists are sorted.
    pub fn bipartition(&self) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
        let mut colour: Vec<Option<bool>> = vec![None; self.n() + 1];
        for s in self.vertices() {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let c = colour[v].unwrap();
                for &w in self.neighbors(v) {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let (a, b): (Vec<Vertex>, Vec<Vertex>) =
            self.vertices().partition(|&v| colour[v] == Some(false));
        Some((a, b))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn has_triangle(&self) -> bool {
        self.edges().any(|e| {
            let (a, b) = (self.neighbors(e.u), self.neighbors(e.v));
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => return true,
                }
            }
            false
        })
    }

    pub fn is_k_connected(&self, k: usize) -> bool {
        is_k_connected(self, k)
    }
}

/// An ordered list of distinct vertices: a cycle when closed implicitly,
/// a path otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSeq(pub Vec<Vertex>);

impl VertexSeq {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    /// Maps every vertex through `f`.
    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> VertexSeq {
        VertexSeq(self.0.iter().map(|&v| f(v)).collect())
    }
}

impl From<Vec<Vertex>> for VertexSeq {
    fn from(v: Vec<Vertex>) -> Self {
        VertexSeq(v)
    }
}

impl fmt::Display for VertexSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_minus_edge_stays_connected() {
        let k4 = Graph::complete(4);
        for e in k4.edges().collect::<Vec<_>>() {
            let g = k4.delete_edge(e).unwrap();
            assert_eq!((g.n(), g.m()), (4, 5));
            assert!(g.is_connected());
        }
    }

    #[test]
    fn path_minus_middle_edge_disconnects() {
        let p3 = Graph::path(3);
        let g = p3.delete_edge(Edge::new(2, 3)).unwrap();
        assert_eq!((g.n(), g.m()), (3, 1));
        assert!(!g.is_connected());
    }

    #[test]
    fn deleting_missing_edge_errors() {
        let g = Graph::path(3);
        assert_eq!(
            g.delete_edge(Edge::new(1, 3)),
            Err(GraphError::NoSuchEdge(Edge::new(1, 3)))
        );
        assert!(g.contract_edge(Edge::new(1, 3)).is_err());
    }

    #[test]
    fn contraction_of_complete_graphs() {
        let k6 = Graph::complete(6);
        assert_eq!(k6.contract_edge(Edge::new(2, 5)).unwrap(), Graph::complete(5));
        let tri = Graph::cycle(3);
        assert_eq!(tri.contract_edge(Edge::new(1, 2)).unwrap(), Graph::complete(2));
    }

    #[test]
    fn contraction_renumbering_rule() {
        // 1-2-3-4 path, contract 2-3: merged vertex is 2, old 4 becomes 3.
        let g = Graph::path(4).contract_edge(Edge::new(2, 3)).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![Edge::new(1, 2), Edge::new(2, 3)]);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::from_edges(3, [(1, 4)]),
            Err(GraphError::VertexOutOfRange { v: 4, n: 3 })
        );
        assert_eq!(
            Graph::from_edges(3, [(1, 2), (2, 1)]),
            Err(GraphError::DuplicateEdge(Edge::new(1, 2)))
        );
    }

    #[test]
    fn bipartition_of_even_cycle_and_triangle() {
        let (a, b) = Graph::cycle(6).bipartition().unwrap();
        assert_eq!(a, vec![1, 3, 5]);
        assert_eq!(b, vec![2, 4, 6]);
        assert!(!Graph::cycle(3).is_bipartite());
        assert!(Graph::complete_bipartite(3, 3).is_bipartite());
    }

    #[test]
    fn triangle_detection() {
        assert!(Graph::complete(4).has_triangle());
        assert!(!Graph::complete_bipartite(3, 4).has_triangle());
        assert!(!Graph::petersen().has_triangle());
    }

    #[test]
    fn petersen_shape() {
        let p = Graph::petersen();
        assert_eq!((p.n(), p.m()), (10, 15));
        assert!(p.vertices().all(|v| p.degree(v) == 3));
    }

    #[test]
    fn add_then_delete_roundtrip() {
        let g = Graph::cycle(5);
        let e = Edge::new(1, 3);
        let h = g.add_edge(e).unwrap();
        assert_eq!(h.m(), 6);
        assert_eq!(h.delete_edge(e).unwrap(), g);
        assert!(h.add_edge(e).is_err());
    }
}
