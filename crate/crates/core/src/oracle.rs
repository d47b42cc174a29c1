//! Exhaustive ground truth: cycle spectra, Hamiltonicity and Hamiltonian
//! connectivity by bitmask backtracking, plus validators for claimed cycles
//! and paths.
//!
//! Everything here is exponential and guarded by a vertex cap.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex, VertexSeq};

/// Largest graph the exhaustive searches accept unless told otherwise.
pub const DEFAULT_ORACLE_CAP: usize = 18;

/// Bitmask representation bounds any cap.
const HARD_LIMIT: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the oracle cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

fn check_cap(g: &Graph, cap: usize) -> Result<(), OracleError> {
    let cap = cap.min(HARD_LIMIT);
    if g.n() > cap {
        Err(OracleError::CapExceeded { n: g.n(), cap })
    } else {
        Ok(())
    }
}

/// Why a claimed cycle or path is not what it claims to be.
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum InvalidReason {
    #[error("expected length {expected}, got {actual}")]
    WrongLength { expected: usize, actual: usize },
    #[error("vertex {vertex} repeated")]
    DuplicateVertex { vertex: Vertex },
    #[error("edge {edge} not in graph")]
    MissingEdge { edge: Edge },
    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("path runs {from}..{to}, expected {want_from}..{want_to}")]
    WrongEndpoints {
        from: Vertex,
        to: Vertex,
        want_from: Vertex,
        want_to: Vertex,
    },
    #[error("a cycle needs at least 3 vertices, got {len}")]
    TooShort { len: usize },
}

impl InvalidReason {
    pub fn code(&self) -> &'static str {
        match self {
            InvalidReason::WrongLength { .. } => "wrong_length",
            InvalidReason::DuplicateVertex { .. } => "duplicate_vertex",
            InvalidReason::MissingEdge { .. } => "missing_edge",
            InvalidReason::VertexOutOfRange { .. } => "vertex_out_of_range",
            InvalidReason::WrongEndpoints { .. } => "wrong_endpoints",
            InvalidReason::TooShort { .. } => "too_short",
        }
    }
}

/// Drops a trailing copy of the first vertex, so both `1,2,3` and `1,2,3,1`
/// describe the triangle.
fn open_cycle(seq: &[Vertex]) -> &[Vertex] {
    match seq {
        [first, .., last] if first == last && seq.len() > 1 => &seq[..seq.len() - 1],
        _ => seq,
    }
}

fn check_vertices(g: &Graph, seq: &[Vertex]) -> Result<(), InvalidReason> {
    let mut seen = vec![false; g.n() + 1];
    for &v in seq {
        if v == 0 || v > g.n() {
            return Err(InvalidReason::VertexOutOfRange { vertex: v, n: g.n() });
        }
        if seen[v] {
            return Err(InvalidReason::DuplicateVertex { vertex: v });
        }
        seen[v] = true;
    }
    Ok(())
}

fn check_steps(g: &Graph, seq: &[Vertex]) -> Result<(), InvalidReason> {
    match seq.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
        Some(w) => Err(InvalidReason::MissingEdge {
            edge: Edge::new(w[0], w[1]),
        }),
        None => Ok(()),
    }
}

/// Checks that `seq` (optionally closed by repeating its first vertex) is a
/// cycle of `g`, of length `expected` when given.
pub fn validate_cycle(g: &Graph, seq: &[Vertex], expected: Option<usize>) -> Result<(), InvalidReason> {
    let cyc = open_cycle(seq);
    check_vertices(g, cyc)?;
    if let Some(expected) = expected {
        if cyc.len() != expected {
            return Err(InvalidReason::WrongLength {
                expected,
                actual: cyc.len(),
            });
        }
    }
    if cyc.len() < 3 {
        return Err(InvalidReason::TooShort { len: cyc.len() });
    }
    check_steps(g, cyc)?;
    let (first, last) = (cyc[0], cyc[cyc.len() - 1]);
    if !g.has_edge(last, first) {
        return Err(InvalidReason::MissingEdge {
            edge: Edge::new(last, first),
        });
    }
    Ok(())
}

/// Checks that `seq` is a Hamiltonian path of `g` from `from` to `to`.
pub fn validate_hamiltonian_path(g: &Graph, seq: &[Vertex], from: Vertex, to: Vertex) -> Result<(), InvalidReason> {
    check_vertices(g, seq)?;
    if seq.len() != g.n() {
        return Err(InvalidReason::WrongLength {
            expected: g.n(),
            actual: seq.len(),
        });
    }
    let (a, b) = (seq[0], seq[seq.len() - 1]);
    if (a, b) != (from, to) {
        return Err(InvalidReason::WrongEndpoints {
            from: a,
            to: b,
            want_from: from,
            want_to: to,
        });
    }
    check_steps(g, seq)
}

/// Cycle lengths present in a graph, with one witness cycle per length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSpectrum {
    pub n: usize,
    pub lengths: BTreeSet<usize>,
    pub witnesses: BTreeMap<usize, VertexSeq>,
}

impl CycleSpectrum {
    /// Lengths in `3..=n` with no cycle.
    pub fn missing(&self) -> Vec<usize> {
        (3..=self.n).filter(|l| !self.lengths.contains(l)).collect()
    }

    pub fn is_pancyclic(&self) -> bool {
        self.n >= 3 && self.missing().is_empty()
    }

    pub fn to_json(&self, g: &Graph, source: &str) -> serde_json::Value {
        let witnesses: serde_json::Map<String, serde_json::Value> = self
            .witnesses
            .iter()
            .map(|(l, w)| (l.to_string(), serde_json::json!(w.0)))
            .collect();
        serde_json::json!({
            "schema": crate::SCHEMA_VERSION,
            "source": source,
            "n": g.n(),
            "m": g.m(),
            "lengths": self.lengths,
            "missing": self.missing(),
            "pancyclic": self.is_pancyclic(),
            "hamiltonian": self.lengths.contains(&self.n),
            "witnesses": witnesses,
        })
    }
}

impl fmt::Display for CycleSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ls: Vec<String> = self.lengths.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", ls.join(","))
    }
}

fn masks(g: &Graph) -> Vec<u64> {
    let mut adj = vec![0u64; g.n() + 1];
    for v in g.vertices() {
        for &w in g.neighbors(v) {
            adj[v] |= 1 << (w - 1);
        }
    }
    adj
}

fn bit(v: Vertex) -> u64 {
    1 << (v - 1)
}

/// Bits for lengths `lo..=hi`.
fn range_mask(lo: usize, hi: usize) -> u128 {
    if lo > hi {
        return 0;
    }
    let upto = |x: usize| if x >= 127 { u128::MAX } else { (1u128 << (x + 1)) - 1 };
    upto(hi) & !upto(lo - 1)
}

/// Vertices of `avail` reachable from the neighbours of `from`.
fn reach(adj: &[u64], from: Vertex, avail: u64) -> u64 {
    let mut seen = adj[from] & avail;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize + 1;
        frontier &= frontier - 1;
        let new = adj[v] & avail & !seen;
        seen |= new;
        frontier |= new;
    }
    seen
}

struct CycleSearch {
    adj: Vec<u64>,
    found: u128,
    witnesses: BTreeMap<usize, VertexSeq>,
    path: Vec<Vertex>,
}

impl CycleSearch {
    /// Extends the path (which starts at its smallest vertex `s`) through
    /// vertices of `avail` only.
    fn extend(&mut self, s: Vertex, avail: u64) {
        let cur = *self.path.last().unwrap();
        let len = self.path.len();
        if len >= 3 && self.adj[cur] & bit(s) != 0 && self.found & (1 << len) == 0 {
            self.found |= 1 << len;
            self.witnesses.insert(len, VertexSeq(self.path.clone()));
        }
        let reachable = reach(&self.adj, cur, avail);
        let hi = len + reachable.count_ones() as usize;
        if range_mask(len + 1, hi) & !self.found == 0 {
            return;
        }
        let mut next = self.adj[cur] & avail;
        while next != 0 {
            let w = next.trailing_zeros() as usize + 1;
            next &= next - 1;
            self.path.push(w);
            self.extend(s, avail & !bit(w));
            self.path.pop();
        }
    }
}

/// Every cycle length of `g` with a witness for each, by exhaustive search.
pub fn cycle_spectrum(g: &Graph, cap: usize) -> Result<CycleSpectrum, OracleError> {
    check_cap(g, cap)?;
    let n = g.n();
    let mut search = CycleSearch {
        adj: masks(g),
        found: 0,
        witnesses: BTreeMap::new(),
        path: Vec::with_capacity(n),
    };
    for s in g.vertices() {
        let above: u64 = if s == 64 { 0 } else { !0u64 << s };
        let avail = above & if n == 64 { !0 } else { (1u64 << n) - 1 };
        // the cycle through s as its smallest vertex has at most n - s + 1 vertices
        if range_mask(3, n - s + 1) & !search.found == 0 {
            continue;
        }
        search.path.clear();
        search.path.push(s);
        search.extend(s, avail);
    }
    let lengths = search.witnesses.keys().copied().collect();
    Ok(CycleSpectrum {
        n,
        lengths,
        witnesses: search.witnesses,
    })
}

pub fn is_pancyclic(g: &Graph, cap: usize) -> Result<bool, OracleError> {
    Ok(cycle_spectrum(g, cap)?.is_pancyclic())
}

enum Goal {
    /// Hamiltonian path ending at this vertex.
    EndAt(Vertex),
    /// Hamiltonian cycle: the last vertex must touch the start.
    Close(Vertex),
}

struct HamSearch {
    adj: Vec<u64>,
    path: Vec<Vertex>,
}

impl HamSearch {
    fn run(&mut self, start: Vertex, goal: &Goal, unvisited: u64) -> bool {
        self.path.clear();
        self.path.push(start);
        self.step(goal, unvisited)
    }

    fn step(&mut self, goal: &Goal, unvisited: u64) -> bool {
        let cur = *self.path.last().unwrap();
        if unvisited == 0 {
            return match goal {
                Goal::EndAt(t) => cur == *t,
                Goal::Close(s) => self.adj[cur] & bit(*s) != 0,
            };
        }
        let (target, extra) = match goal {
            Goal::EndAt(t) => (*t, 0),
            Goal::Close(s) => (0, bit(*s)),
        };
        if target != 0 && unvisited & bit(target) == 0 {
            return false;
        }
        // the unvisited part must hang together off the current vertex
        if reach(&self.adj, cur, unvisited) != unvisited {
            return false;
        }
        // every unvisited vertex needs two usable neighbours, one if it is the end
        let usable = unvisited | bit(cur) | extra;
        let mut rest = unvisited;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize + 1;
            rest &= rest - 1;
            let need = if w == target { 1 } else { 2 };
            if ((self.adj[w] & usable).count_ones() as usize) < need {
                return false;
            }
        }
        let mut next = self.adj[cur] & unvisited;
        if target != 0 && unvisited != bit(target) {
            next &= !bit(target);
        }
        while next != 0 {
            let w = next.trailing_zeros() as usize + 1;
            next &= next - 1;
            self.path.push(w);
            if self.step(goal, unvisited & !bit(w)) {
                return true;
            }
            self.path.pop();
        }
        false
    }
}

fn all_mask(n: usize) -> u64 {
    if n == 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// A Hamiltonian cycle starting at vertex 1, if one exists.
pub fn hamiltonian_cycle(g: &Graph, cap: usize) -> Result<Option<VertexSeq>, OracleError> {
    check_cap(g, cap)?;
    let n = g.n();
    if n < 3 {
        return Ok(None);
    }
    let mut search = HamSearch {
        adj: masks(g),
        path: Vec::new(),
    };
    let found = search.run(1, &Goal::Close(1), all_mask(n) & !bit(1));
    Ok(found.then_some(VertexSeq(search.path)))
}

pub fn is_hamiltonian(g: &Graph, cap: usize) -> Result<bool, OracleError> {
    Ok(hamiltonian_cycle(g, cap)?.is_some())
}

/// A Hamiltonian path from `u` to `v`, if one exists.
pub fn hamiltonian_path(g: &Graph, u: Vertex, v: Vertex, cap: usize) -> Result<Option<VertexSeq>, OracleError> {
    check_cap(g, cap)?;
    assert!(u != v && u >= 1 && v >= 1 && u.max(v) <= g.n(), "endpoints must be distinct vertices");
    let mut search = HamSearch {
        adj: masks(g),
        path: Vec::new(),
    };
    let found = search.run(u, &Goal::EndAt(v), all_mask(g.n()) & !bit(u));
    Ok(found.then_some(VertexSeq(search.path)))
}

/// A pair of vertices joined by no Hamiltonian path, or `None` when the
/// graph is Hamiltonian-connected.
pub fn hamiltonian_connectivity_failure(g: &Graph, cap: usize) -> Result<Option<(Vertex, Vertex)>, OracleError> {
    check_cap(g, cap)?;
    let n = g.n();
    if n < 2 {
        return Ok(None);
    }
    if !g.is_connected() {
        return Ok(Some((1, 2)));
    }
    // parity: in a bipartite graph a spanning path alternates classes
    if let Some((a, b)) = g.bipartition() {
        let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let bad = if big.len() == small.len() {
            (big.len() >= 2).then(|| (big[0], big[1]))
        } else if big.len() == small.len() + 1 {
            (!small.is_empty() && !big.is_empty()).then(|| (big[0].min(small[0]), big[0].max(small[0])))
        } else {
            Some((big[0], big[1]))
        };
        if let Some(pair) = bad {
            return Ok(Some(pair));
        }
    }
    for u in 1..=n {
        for v in u + 1..=n {
            if hamiltonian_path(g, u, v, cap)?.is_none() {
                return Ok(Some((u, v)));
            }
        }
    }
    Ok(None)
}

pub fn is_hamiltonian_connected(g: &Graph, cap: usize) -> Result<bool, OracleError> {
    Ok(hamiltonian_connectivity_failure(g, cap)?.is_none())
}
