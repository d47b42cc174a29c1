//! Exact planarity and the almost-planarity decision.
//!
//! Planarity runs the Demoucron–Malgrange–Pertuiset path-addition algorithm
//! on every biconnected block. A graph is almost-planar when it is connected
//! and non-planar, and every edge has a planar deletion or a planar
//! contraction.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::graph::{biconnected_blocks, Edge, Graph};

pub fn is_planar(g: &Graph) -> bool {
    let n = g.n();
    if n <= 4 {
        return true;
    }
    if g.m() > 3 * n - 6 {
        return false;
    }
    biconnected_blocks(g).iter().all(|block| block_is_planar(block))
}

fn block_is_planar(block: &[Edge]) -> bool {
    // compact the block's vertices to 0..nb
    let mut ids: Vec<usize> = block.iter().flat_map(|e| [e.u, e.v]).collect();
    ids.sort_unstable();
    ids.dedup();
    let nb = ids.len();
    let mb = block.len();
    if nb <= 4 || mb <= nb {
        return true;
    }
    if mb > 3 * nb - 6 {
        return false;
    }
    let local = |v: usize| ids.binary_search(&v).unwrap();
    let mut adj = vec![Vec::new(); nb];
    for e in block {
        let (a, b) = (local(e.u), local(e.v));
        adj[a].push(b);
        adj[b].push(a);
    }
    PathAddition::new(adj).run()
}

struct PathAddition {
    adj: Vec<Vec<usize>>,
    placed: Vec<bool>,
    placed_edges: HashSet<(usize, usize)>,
    faces: Vec<Vec<usize>>,
}

/// A piece of the graph not yet embedded: either a single edge between
/// embedded vertices or a component of unembedded vertices with its
/// attachment edges.
struct Fragment {
    attachments: Vec<usize>,
    kind: FragmentKind,
}

enum FragmentKind {
    Chord(usize, usize),
    Component(Vec<usize>),
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl PathAddition {
    fn new(adj: Vec<Vec<usize>>) -> Self {
        let nb = adj.len();
        PathAddition {
            adj,
            placed: vec![false; nb],
            placed_edges: HashSet::new(),
            faces: Vec::new(),
        }
    }

    fn run(mut self) -> bool {
        let cycle = self.initial_cycle();
        for (i, &v) in cycle.iter().enumerate() {
            self.placed[v] = true;
            self.placed_edges.insert(key(v, cycle[(i + 1) % cycle.len()]));
        }
        let mut reversed = cycle.clone();
        reversed.reverse();
        self.faces = vec![cycle, reversed];

        loop {
            let fragments = self.fragments();
            if fragments.is_empty() {
                return true;
            }
            let face_sets: Vec<HashSet<usize>> =
                self.faces.iter().map(|f| f.iter().copied().collect()).collect();
            let mut choice: Option<(usize, usize)> = None;
            for (fi, frag) in fragments.iter().enumerate() {
                let admissible: Vec<usize> = face_sets
                    .iter()
                    .enumerate()
                    .filter(|(_, set)| frag.attachments.iter().all(|a| set.contains(a)))
                    .map(|(i, _)| i)
                    .collect();
                match admissible.len() {
                    0 => return false,
                    1 => {
                        choice = Some((fi, admissible[0]));
                        break;
                    }
                    _ => {
                        if choice.is_none() {
                            choice = Some((fi, admissible[0]));
                        }
                    }
                }
            }
            let (fi, face) = choice.expect("at least one fragment");
            let path = self.fragment_path(&fragments[fi]);
            self.embed(face, &path);
        }
    }

    /// Any cycle, from the first back edge of a DFS.
    fn initial_cycle(&self) -> Vec<usize> {
        let nb = self.adj.len();
        let mut parent = vec![usize::MAX; nb];
        let mut depth = vec![usize::MAX; nb];
        let mut stack = vec![(0usize, 0usize)];
        depth[0] = 0;
        while let Some(top) = stack.last_mut() {
            let (v, idx) = *top;
            if idx == self.adj[v].len() {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let w = self.adj[v][idx];
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                stack.push((w, 0));
            } else if w != parent[v] && depth[w] < depth[v] {
                let mut cycle = vec![v];
                let mut x = v;
                while x != w {
                    x = parent[x];
                    cycle.push(x);
                }
                return cycle;
            }
        }
        unreachable!("a biconnected block with more edges than vertices has a cycle")
    }

    fn fragments(&self) -> Vec<Fragment> {
        let nb = self.adj.len();
        let mut out = Vec::new();
        for v in 0..nb {
            if !self.placed[v] {
                continue;
            }
            for &w in &self.adj[v] {
                if v < w && self.placed[w] && !self.placed_edges.contains(&(v, w)) {
                    out.push(Fragment {
                        attachments: vec![v, w],
                        kind: FragmentKind::Chord(v, w),
                    });
                }
            }
        }
        let mut seen = vec![false; nb];
        for s in 0..nb {
            if self.placed[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut attachments = Vec::new();
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for &w in &self.adj[v] {
                    if self.placed[w] {
                        attachments.push(w);
                    } else if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            attachments.sort_unstable();
            attachments.dedup();
            out.push(Fragment {
                attachments,
                kind: FragmentKind::Component(comp),
            });
        }
        out
    }

    /// A path through the fragment joining two distinct attachments.
    fn fragment_path(&self, frag: &Fragment) -> Vec<usize> {
        match &frag.kind {
            FragmentKind::Chord(a, b) => vec![*a, *b],
            FragmentKind::Component(comp) => {
                let nb = self.adj.len();
                let start = frag.attachments[0];
                let mut inside = vec![false; nb];
                for &v in comp {
                    inside[v] = true;
                }
                let mut prev = vec![usize::MAX; nb];
                let mut queue = std::collections::VecDeque::new();
                for &w in &self.adj[start] {
                    if inside[w] && prev[w] == usize::MAX {
                        prev[w] = start;
                        queue.push_back(w);
                    }
                }
                while let Some(v) = queue.pop_front() {
                    if let Some(&end) = self.adj[v]
                        .iter()
                        .find(|&&w| self.placed[w] && w != start)
                    {
                        let mut path = vec![end, v];
                        let mut x = v;
                        while prev[x] != start {
                            x = prev[x];
                            path.push(x);
                        }
                        path.push(start);
                        path.reverse();
                        return path;
                    }
                    for &w in &self.adj[v] {
                        if inside[w] && prev[w] == usize::MAX {
                            prev[w] = v;
                            queue.push_back(w);
                        }
                    }
                }
                unreachable!("fragments of a biconnected block have two attachments")
            }
        }
    }

    fn embed(&mut self, face_idx: usize, path: &[usize]) {
        for w in path.windows(2) {
            self.placed_edges.insert(key(w[0], w[1]));
        }
        for &v in path {
            self.placed[v] = true;
        }
        let face = self.faces.swap_remove(face_idx);
        let (a, b) = (path[0], *path.last().unwrap());
        let ia = face.iter().position(|&x| x == a).unwrap();
        let ib = face.iter().position(|&x| x == b).unwrap();
        let len = face.len();
        let walk = |from: usize, to: usize| -> Vec<usize> {
            let mut out = Vec::new();
            let mut i = from;
            loop {
                out.push(face[i]);
                if i == to {
                    break;
                }
                i = (i + 1) % len;
            }
            out
        };
        let interior = &path[1..path.len() - 1];
        let mut first = walk(ia, ib);
        first.extend(interior.iter().rev());
        let mut second = walk(ib, ia);
        second.extend(interior.iter());
        self.faces.push(first);
        self.faces.push(second);
    }
}

/// Per-edge outcome of the almost-planarity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeEvidence {
    pub u: usize,
    pub v: usize,
    pub del_planar: bool,
    pub con_planar: bool,
}

impl EdgeEvidence {
    pub fn edge(&self) -> Edge {
        Edge::new(self.u, self.v)
    }

    pub fn passes(&self) -> bool {
        self.del_planar || self.con_planar
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRef {
    pub u: usize,
    pub v: usize,
}

/// Result of [`is_almost_planar`]; serializes to the evidence report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlmostPlanarEvidence {
    pub schema: u32,
    pub verdict: bool,
    pub planar: bool,
    pub connected: bool,
    pub edges: Vec<EdgeEvidence>,
    pub failing_edge: Option<EdgeRef>,
}

impl AlmostPlanarEvidence {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("evidence serializes")
    }
}

/// Decides almost-planarity, recording both checks for every edge in
/// canonical edge order.
///
/// Planar graphs and disconnected graphs get `verdict = false`. The
/// `failing_edge` is the first edge whose deletion and contraction are both
/// non-planar; it is reported only for connected non-planar inputs.
pub fn is_almost_planar(g: &Graph) -> AlmostPlanarEvidence {
    let planar = is_planar(g);
    let connected = g.is_connected();
    let edges: Vec<EdgeEvidence> = g
        .edges()
        .map(|e| {
            let del_planar = is_planar(&g.delete_edge(e).expect("edge present"));
            let con_planar = is_planar(&g.contract_edge(e).expect("edge present"));
            EdgeEvidence {
                u: e.u,
                v: e.v,
                del_planar,
                con_planar,
            }
        })
        .collect();
    let failing_edge = if planar || !connected {
        None
    } else {
        edges
            .iter()
            .find(|row| !row.passes())
            .map(|row| EdgeRef { u: row.u, v: row.v })
    };
    let verdict = !planar && connected && failing_edge.is_none();
    AlmostPlanarEvidence {
        schema: crate::SCHEMA_VERSION,
        verdict,
        planar,
        connected,
        edges,
        failing_edge,
    }
}
