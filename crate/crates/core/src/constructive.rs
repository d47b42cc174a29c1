//! Explicit cycle and Hamiltonian-path builders for the families in
//! [`crate::families`]. Each builder runs in time linear in the output and
//! every sequence is checked with [`validate_cycle`] (or the path
//! validator) before it is returned, so a wrong formula surfaces as
//! [`ConstructError::Invalid`] instead of a bad witness.
//!
//! Formula notes, where the obvious index bookkeeping goes wrong:
//!
//! * Möbius even cycles of length `2t` run `1..t`, across the rung to
//!   `k+t`, and back down to `k+1`. Halving `t` a second time yields a
//!   cycle of length `t`; see [`uncorrected::mobius_even`].
//! * The longest odd Möbius cycle must close through `k` before returning
//!   to `1`; ending `…, k-1, 2k, 1` uses a non-edge.
//! * A bicycle Hamiltonian path between non-adjacent rim vertices leaves
//!   the hubs towards `i-1`, not `n-2`; otherwise `j-1` is visited twice.
//! * With `r_i = {i, i+1}`, the cycle through the hubs and the whole rim
//!   enters the rim at `i` and leaves at `i+1` after walking backwards.
//! * In the spoke-pair builder the rim run for a cycle of length `L` has
//!   `L-1` (one hub) or `L-2` (two hubs) vertices.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::families::{rim_wrap, FamilySpec, LabeledInstance, TriangleEdge, VertexRole};
use crate::graph::{Graph, Vertex, VertexSeq};
use crate::oracle::{validate_cycle, validate_hamiltonian_path, CycleSpectrum, InvalidReason};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("builder needs a {expected} instance, got {got}")]
    WrongFamily { expected: &'static str, got: String },
    #[error("no cycle of length {len} is claimed for this instance")]
    NotClaimed { len: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("constructed sequence for length {len} is invalid: {reason}")]
    Invalid { len: usize, reason: InvalidReason },
}

/// Which hub of a bicycle wheel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hub {
    S,
    T,
}

impl Hub {
    fn other(self) -> Hub {
        match self {
            Hub::S => Hub::T,
            Hub::T => Hub::S,
        }
    }
}

fn gate(g: &Graph, seq: Vec<Vertex>, len: usize) -> Result<VertexSeq, ConstructError> {
    validate_cycle(g, &seq, Some(len)).map_err(|reason| ConstructError::Invalid { len, reason })?;
    Ok(VertexSeq(seq))
}

fn spec_of(inst: &LabeledInstance) -> Result<&FamilySpec, ConstructError> {
    inst.spec.as_ref().ok_or_else(|| ConstructError::WrongFamily {
        expected: "family",
        got: "an unlabelled graph".into(),
    })
}

fn wrong(expected: &'static str, inst: &LabeledInstance) -> ConstructError {
    ConstructError::WrongFamily {
        expected,
        got: inst
            .spec
            .as_ref()
            .map(ToString::to_string)
            .unwrap_or_else(|| "an unlabelled graph".into()),
    }
}

// ---------------------------------------------------------------- Möbius

fn mobius_k(inst: &LabeledInstance) -> Result<usize, ConstructError> {
    match spec_of(inst)? {
        FamilySpec::Mobius { k } => Ok(*k),
        _ => Err(wrong("Möbius ladder", inst)),
    }
}

fn mobius_lengths(k: usize) -> BTreeSet<usize> {
    let mut out: BTreeSet<usize> = (2..=k).map(|t| 2 * t).collect();
    if k.is_multiple_of(2) {
        out.extend((k + 1..2 * k).step_by(2));
    }
    out
}

/// A cycle of length `len` in `V_{2k}`. Even lengths `4..=2k` always exist;
/// odd lengths `k+1, k+3, …, 2k-1` exist exactly when `k` is even.
pub fn mobius_cycle(inst: &LabeledInstance, len: usize) -> Result<VertexSeq, ConstructError> {
    let k = mobius_k(inst)?;
    if !mobius_lengths(k).contains(&len) {
        return Err(ConstructError::NotClaimed { len });
    }
    let seq = if len == 2 * k {
        // 1..k-1, 2k, k, 2k-1..k+1
        let mut s: Vec<Vertex> = (1..k).collect();
        s.extend([2 * k, k]);
        s.extend((k + 1..2 * k).rev());
        s
    } else if len.is_multiple_of(2) {
        let t = len / 2;
        let mut s: Vec<Vertex> = (1..=t).collect();
        s.extend((k + 1..=k + t).rev());
        s
    } else {
        mobius_odd(k, (len - k - 1) / 2)
    };
    gate(&inst.graph, seq, len)
}

/// Odd cycle of length `k + 1 + 2c`: start on the left rail, cross the
/// ladder `c` times over consecutive rung pairs, then finish through the
/// twisted end `…, k-1, 2k, k` and the edge `{k, 1}`.
fn mobius_odd(k: usize, c: usize) -> Vec<Vertex> {
    let mut seq = vec![1];
    for m in 1..=c {
        seq.extend([k + 2 * m - 1, k + 2 * m, 2 * m]);
        if m < c {
            seq.push(2 * m + 1);
        }
    }
    seq.extend((2 * c + 1).max(2)..k);
    seq.extend([2 * k, k]);
    seq
}

// ---------------------------------------------------------------- bicycle

/// Spoke presence for a bicycle instance, indexed by rim vertex.
struct Spokes {
    n: usize,
    rim: usize,
    s: Vec<bool>,
    t: Vec<bool>,
}

impl Spokes {
    fn of(inst: &LabeledInstance) -> Result<Spokes, ConstructError> {
        let FamilySpec::Bicycle { n, .. } = spec_of(inst)? else {
            return Err(wrong("bicycle wheel", inst));
        };
        let n = *n;
        let rim = n - 2;
        let g = &inst.graph;
        let mut s = vec![false; rim + 1];
        let mut t = vec![false; rim + 1];
        for i in 1..=rim {
            s[i] = g.has_edge(n, i);
            t[i] = g.has_edge(n - 1, i);
        }
        Ok(Spokes { n, rim, s, t })
    }

    fn hub(&self, h: Hub) -> Vertex {
        match h {
            Hub::S => self.n,
            Hub::T => self.n - 1,
        }
    }

    fn has(&self, h: Hub, i: usize) -> bool {
        match h {
            Hub::S => self.s[i],
            Hub::T => self.t[i],
        }
    }

    fn wrap(&self, i: i64) -> usize {
        rim_wrap(i, self.rim)
    }

    /// Rim walk of `count` vertices from `start`, forwards or backwards.
    fn walk(&self, start: usize, count: usize, forward: bool) -> impl Iterator<Item = Vertex> + '_ {
        let step: i64 = if forward { 1 } else { -1 };
        (0..count as i64).map(move |d| self.wrap(start as i64 + step * d))
    }

    fn every_rim_vertex_has_spoke(&self) -> bool {
        (1..=self.rim).all(|i| self.s[i] || self.t[i])
    }

    /// First rim vertex `i` with `h`-spokes at both `i` and `i+1`.
    fn adjacent_pair(&self) -> Option<(usize, Hub)> {
        [Hub::S, Hub::T].into_iter().find_map(|h| {
            (1..=self.rim)
                .find(|&i| self.has(h, i) && self.has(h, self.wrap(i as i64 + 1)))
                .map(|i| (i, h))
        })
    }
}

fn require_full_bicycle(inst: &LabeledInstance) -> Result<usize, ConstructError> {
    match spec_of(inst)? {
        FamilySpec::Bicycle {
            n,
            removed_s,
            removed_t,
        } if removed_s.is_empty() && removed_t.is_empty() => Ok(*n),
        _ => Err(wrong("full bicycle wheel", inst)),
    }
}

/// `C_k` in the full bicycle wheel: `n, 1, 2, …, k-2, n-1`.
pub fn bicycle_cycle(inst: &LabeledInstance, len: usize) -> Result<VertexSeq, ConstructError> {
    let n = require_full_bicycle(inst)?;
    if !(3..=n).contains(&len) {
        return Err(ConstructError::NotClaimed { len });
    }
    let mut seq = vec![n];
    seq.extend(1..=len - 2);
    seq.push(n - 1);
    gate(&inst.graph, seq, len)
}

/// Hamiltonian path between any two vertices of the full bicycle wheel.
pub fn bicycle_ham_path(inst: &LabeledInstance, u: Vertex, v: Vertex) -> Result<VertexSeq, ConstructError> {
    let n = require_full_bicycle(inst)?;
    if u == v || u == 0 || v == 0 || u.max(v) > n {
        return Err(ConstructError::Unsupported(format!(
            "endpoints {u}, {v} are not two distinct vertices of B{n}"
        )));
    }
    let sp = Spokes::of(inst)?;
    let rim = sp.rim;
    let is_hub = |x: Vertex| x >= n - 1;
    let seq: Vec<Vertex> = if is_hub(u) && is_hub(v) {
        let mut s = vec![u];
        s.extend(1..=rim);
        s.push(v);
        s
    } else if is_hub(u) || is_hub(v) {
        let (h, j) = if is_hub(u) { (u, v) } else { (v, u) };
        let other = if h == n { n - 1 } else { n };
        // h, j+1, …, j-1, h', j
        let mut s = vec![h];
        s.extend(sp.walk(sp.wrap(j as i64 + 1), rim - 1, true));
        s.extend([other, j]);
        if is_hub(u) {
            s
        } else {
            s.into_iter().rev().collect()
        }
    } else {
        let (i, j) = (u, v);
        if sp.wrap(i as i64 + 1) == j || sp.wrap(j as i64 + 1) == i {
            // orient so that j follows i on the rim
            let (a, b, flip) = if sp.wrap(i as i64 + 1) == j { (i, j, false) } else { (j, i, true) };
            let mut s = vec![a, n, n - 1];
            s.extend(sp.walk(sp.wrap(a as i64 - 1), rim - 2, false));
            s.push(b);
            if flip {
                s.reverse();
            }
            s
        } else {
            // i, …, j-1 forwards, through both hubs, then i-1, … backwards to j
            let forward = (j + rim - i) % rim;
            let mut s: Vec<Vertex> = sp.walk(i, forward, true).collect();
            s.extend([n, n - 1]);
            s.extend(sp.walk(sp.wrap(i as i64 - 1), rim - forward - 1, false));
            s.push(j);
            s
        }
    };
    validate_hamiltonian_path(&inst.graph, &seq, u, v).map_err(|reason| ConstructError::Invalid { len: n, reason })?;
    Ok(VertexSeq(seq))
}

/// Hamiltonian cycle of a spoke-deleted bicycle wheel in which every rim
/// vertex keeps a spoke and both hubs keep at least one: enter the rim at
/// `i` from one hub, walk backwards round the rim to `i+1`, leave to the
/// other hub and close along the axle.
pub fn b_graph_ham_cycle(inst: &LabeledInstance) -> Result<VertexSeq, ConstructError> {
    let sp = Spokes::of(inst)?;
    if !sp.every_rim_vertex_has_spoke() {
        return Err(ConstructError::Unsupported("a rim vertex has no spoke".into()));
    }
    let found = (1..=sp.rim).find_map(|i| {
        let next = sp.wrap(i as i64 + 1);
        [Hub::S, Hub::T]
            .into_iter()
            .find(|&h| sp.has(h, i) && sp.has(h.other(), next))
            .map(|h| (i, h))
    });
    let Some((i, h)) = found else {
        return Err(ConstructError::Unsupported("one hub has no spokes".into()));
    };
    let mut seq = vec![sp.hub(h)];
    seq.extend(sp.walk(i, sp.rim, false));
    seq.push(sp.hub(h.other()));
    gate(&inst.graph, seq, sp.n)
}

/// Even cycle in an alternating-spoke wheel. For `len <= n-2`: the s-hub,
/// then `len-1` consecutive rim vertices starting at an s-spoke; `len = n`
/// is the Hamiltonian cycle.
pub fn a_even_cycle(inst: &LabeledInstance, len: usize) -> Result<VertexSeq, ConstructError> {
    let sp = Spokes::of(inst)?;
    if len % 2 == 1 || len < 4 || (len > sp.rim && len != sp.n) {
        return Err(ConstructError::NotClaimed { len });
    }
    if len == sp.n {
        return b_graph_ham_cycle(inst);
    }
    let start = (1..=sp.rim)
        .find(|&i| sp.s[i])
        .ok_or_else(|| ConstructError::Unsupported("no s-spoke".into()))?;
    let mut seq = vec![sp.n];
    seq.extend(sp.walk(start, len - 1, true));
    gate(&inst.graph, seq, len)
}

/// Hamiltonian cycle of `A_n` for even `n`:
/// `n, 1, 2, n-1, n-2, n-3, …, 3`.
pub fn a_ham_cycle(inst: &LabeledInstance) -> Result<VertexSeq, ConstructError> {
    let sp = Spokes::of(inst)?;
    let n = sp.n;
    if n % 2 == 1 {
        return Err(ConstructError::Unsupported(format!("A{n} has odd order")));
    }
    let mut seq = vec![n, 1, 2, n - 1];
    seq.extend((3..=n - 2).rev());
    gate(&inst.graph, seq, n)
}

/// Cycle of length `len` using `hub`-spokes at the adjacent rim vertices
/// `i` and `i+1`, for `3 <= len <= n`, in a bicycle instance where every
/// rim vertex keeps a spoke.
pub fn b_adjacent_spoke_cycle(
    inst: &LabeledInstance,
    i: usize,
    hub: Hub,
    len: usize,
) -> Result<VertexSeq, ConstructError> {
    let sp = Spokes::of(inst)?;
    let n = sp.n;
    let next = sp.wrap(i as i64 + 1);
    if i == 0 || i > sp.rim || !sp.has(hub, i) || !sp.has(hub, next) {
        return Err(ConstructError::Unsupported(format!("no {hub:?}-spokes at rim {i} and {next}")));
    }
    if !(3..=n).contains(&len) {
        return Err(ConstructError::NotClaimed { len });
    }
    if len == n {
        return b_graph_ham_cycle(inst);
    }
    if !sp.every_rim_vertex_has_spoke() {
        return Err(ConstructError::Unsupported("a rim vertex has no spoke".into()));
    }
    let h = sp.hub(hub);
    let far = sp.wrap(i as i64 + len as i64 - 2);
    let seq: Vec<Vertex> = if len == 3 {
        vec![h, i, next]
    } else if sp.has(hub, far) {
        std::iter::once(h).chain(sp.walk(i, len - 1, true)).collect()
    } else {
        let mut s = vec![h];
        s.extend(sp.walk(next, len - 2, true));
        s.push(sp.hub(hub.other()));
        s
    };
    gate(&inst.graph, seq, len)
}

fn bicycle_lengths(inst: &LabeledInstance) -> Result<BTreeSet<usize>, ConstructError> {
    let sp = Spokes::of(inst)?;
    if !sp.every_rim_vertex_has_spoke() {
        return Err(ConstructError::Unsupported(
            "rim vertex without spokes; the instance is not 3-connected".into(),
        ));
    }
    if !sp.s.contains(&true) || !sp.t.contains(&true) {
        return Err(ConstructError::Unsupported("a hub has no spokes".into()));
    }
    Ok(if sp.adjacent_pair().is_some() {
        (3..=sp.n).collect()
    } else {
        (2..=sp.n / 2).map(|t| 2 * t).collect()
    })
}

fn bicycle_any_cycle(inst: &LabeledInstance, len: usize) -> Result<VertexSeq, ConstructError> {
    if !bicycle_lengths(inst)?.contains(&len) {
        return Err(ConstructError::NotClaimed { len });
    }
    let sp = Spokes::of(inst)?;
    match sp.adjacent_pair() {
        Some((i, h)) => b_adjacent_spoke_cycle(inst, i, h, len),
        None if len == sp.n => b_graph_ham_cycle(inst),
        None => a_even_cycle(inst, len),
    }
}

// ---------------------------------------------------------------- wheel

pub fn wheel_cycle(inst: &LabeledInstance, len: usize) -> Result<VertexSeq, ConstructError> {
    let FamilySpec::Wheel { n } = spec_of(inst)? else {
        return Err(wrong("wheel", inst));
    };
    if !(3..=*n).contains(&len) {
        return Err(ConstructError::NotClaimed { len });
    }
    let hub = inst.v(VertexRole::WheelHub);
    let seq = std::iter::once(hub)
        .chain((1..len).map(|i| inst.v(VertexRole::WheelRim(i))))
        .collect();
    gate(&inst.graph, seq, len)
}

// ---------------------------------------------------------------- K3,3 chain and H

/// Cycles of `K_{3,3}` plus the triangle edge `extra` (if any).
fn k33_cycle(inst: &LabeledInstance, extra: Option<TriangleEdge>, len: usize) -> Result<VertexSeq, ConstructError> {
    use VertexRole::*;
    let (u, v, w) = match extra {
        Some(TriangleEdge::Ab) | None => (A, B, C),
        Some(TriangleEdge::Bc) => (B, C, A),
        Some(TriangleEdge::Ac) => (A, C, B),
    };
    let [u, v, w] = [u, v, w].map(|r| inst.v(r));
    let x = [X(1), Y(1), Z(1)].map(|r| inst.v(r));
    let seq = match (len, extra.is_some()) {
        (3, true) => vec![u, x[0], v],
        (4, _) => vec![u, x[0], v, x[1]],
        (5, true) => vec![u, v, x[0], w, x[1]],
        (6, _) => vec![u, x[0], v, x[1], w, x[2]],
        _ => return Err(ConstructError::NotClaimed { len }),
    };
    gate(&inst.graph, seq, len)
}

pub fn k33_chain_cycle(inst: &LabeledInstance, len: usize) -> Result<VertexSeq, ConstructError> {
    let FamilySpec::K33Chain { extra_edges } = spec_of(inst)? else {
        return Err(wrong("K3,3 chain", inst));
    };
    k33_cycle(inst, extra_edges.iter().next().copied(), len)
}

/// Picks `a in 1..=max_a`, `b in 1..=max_b` with `a + b = total`.
fn split2(total: usize, max_a: usize, max_b: usize) -> Option<(usize, usize)> {
    let a = total.checked_sub(max_b)?.max(1);
    (a <= max_a && total > a && total - a <= max_b).then_some((a, total - a))
}

fn split3(total: usize, max: [usize; 3]) -> Option<[usize; 3]> {
    (1..=max[0]).find_map(|a| split2(total.checked_sub(a)?, max[1], max[2]).map(|(b, c)| [a, b, c]))
}

struct HRoles<'a> {
    inst: &'a LabeledInstance,
}

impl HRoles<'_> {
    fn x(&self, i: usize) -> Vertex {
        self.inst.v(VertexRole::X(i))
    }
    fn y(&self, i: usize) -> Vertex {
        self.inst.v(VertexRole::Y(i))
    }
    fn z(&self, i: usize) -> Vertex {
        self.inst.v(VertexRole::Z(i))
    }
    fn a(&self) -> Vertex {
        self.inst.v(VertexRole::A)
    }
    fn b(&self) -> Vertex {
        self.inst.v(VertexRole::B)
    }
    fn c(&self) -> Vertex {
        self.inst.v(VertexRole::C)
    }
    /// `first..=last` in either direction.
    fn run(&self, f: impl Fn(&Self, usize) -> Vertex, first: usize, last: usize) -> Vec<Vertex> {
        if first <= last {
            (first..=last).map(|i| f(self, i)).collect()
        } else {
            (last..=first).rev().map(|i| f(self, i)).collect()
        }
    }
}

fn h_params(spec: &FamilySpec) -> Option<(usize, usize, usize, &BTreeSet<TriangleEdge>, bool)> {
    match spec {
        FamilySpec::H1 { p, q, r, deleted } => Some((*p, *q, *r, deleted, false)),
        FamilySpec::H2 { p, q, r, deleted } => Some((*p, *q, *r, deleted, true)),
        _ => None,
    }
}

fn h_lengths(spec: &FamilySpec) -> BTreeSet<usize> {
    let (p, q, r, deleted, _) = h_params(spec).expect("H spec");
    if (p, q, r) == (1, 1, 1) && deleted.len() == 3 {
        [4, 6].into()
    } else {
        (3..=p + q + r + 3).collect()
    }
}

/// Cycle of `H1(p, q, r)` that avoids the triangle edges, so it survives
/// any deletion pattern.
fn h1_core_cycle(h: &HRoles, p: usize, q: usize, r: usize, len: usize) -> Option<Vec<Vertex>> {
    let (a, b, c) = (h.a(), h.b(), h.c());
    let w = len - 1;
    // b over a window of one fan path
    if w <= p {
        return Some([vec![b], h.run(HRoles::x, 1, w)].concat());
    }
    if w <= q {
        return Some([vec![b], h.run(HRoles::y, 1, w)].concat());
    }
    if w <= r {
        return Some([vec![b], h.run(HRoles::z, 1, w)].concat());
    }
    // b, x_{p-nx+1}..x_p, a, z_r..z_{r-nz+1}
    if let Some((nx, nz)) = split2(len - 2, p, r) {
        return Some([vec![b], h.run(HRoles::x, p - nx + 1, p), vec![a], h.run(HRoles::z, r, r - nz + 1)].concat());
    }
    // b, z_nz..z_1, c, y_q..y_{q-ny+1}
    if let Some((nz, ny)) = split2(len - 2, r, q) {
        return Some([vec![b], h.run(HRoles::z, nz, 1), vec![c], h.run(HRoles::y, q, q - ny + 1)].concat());
    }
    // b, x_{p-nx+1}..x_p, a, z_r..z_1, c, y_q..y_{q-ny+1}
    if let Some((nx, ny)) = (len > r + 3).then(|| split2(len - r - 3, p, q)).flatten() {
        return Some(
            [
                vec![b],
                h.run(HRoles::x, p - nx + 1, p),
                vec![a],
                h.run(HRoles::z, r, 1),
                vec![c],
                h.run(HRoles::y, q, q - ny + 1),
            ]
            .concat(),
        );
    }
    // b, z_k..z_1, c, x_1..x_p, a, y_1
    let k = len.checked_sub(p + 4)?;
    (1..=r).contains(&k).then(|| {
        [vec![b], h.run(HRoles::z, k, 1), vec![c], h.run(HRoles::x, 1, p), vec![a, h.y(1)]].concat()
    })
}

fn h2_core_cycle(h: &HRoles, p: usize, q: usize, r: usize, len: usize) -> Option<Vec<Vertex>> {
    let (a, b, c) = (h.a(), h.b(), h.c());
    let w = len - 1;
    if w <= p {
        return Some([vec![b], h.run(HRoles::x, 1, w)].concat());
    }
    if w <= q {
        return Some([vec![b], h.run(HRoles::y, 1, w)].concat());
    }
    if w <= r {
        return Some([vec![a], h.run(HRoles::z, 1, w)].concat());
    }
    let tail = len - 3;
    // b, x_{p-tail+1}..x_p, a, y_1
    if (1..=p).contains(&tail) {
        return Some([vec![b], h.run(HRoles::x, p - tail + 1, p), vec![a, h.y(1)]].concat());
    }
    // b, y_tail..y_1, a, x_p
    if (1..=q).contains(&tail) {
        return Some([vec![b], h.run(HRoles::y, tail, 1), vec![a, h.x(p)]].concat());
    }
    // a, z_{r-tail+1}..z_r, b, x_p
    if (1..=r).contains(&tail) {
        return Some([vec![a], h.run(HRoles::z, r - tail + 1, r), vec![b, h.x(p)]].concat());
    }
    // a, z_nz..z_1, c, y_q..y_{q-ny+1}, b, x_{p-nx+1}..x_p
    let [nz, ny, nx] = split3(tail, [r, q, p])?;
    Some(
        [
            vec![a],
            h.run(HRoles::z, nz, 1),
            vec![c],
            h.run(HRoles::y, q, q - ny + 1),
            vec![b],
            h.run(HRoles::x, p - nx + 1, p),
        ]
        .concat(),
    )
}

fn h_cycle(inst: &LabeledInstance, len: usize, second: bool) -> Result<VertexSeq, ConstructError> {
    let spec = spec_of(inst)?;
    let Some((p, q, r, deleted, is_h2)) = h_params(spec).filter(|t| t.4 == second) else {
        return Err(wrong(if second { "H2" } else { "H1" }, inst));
    };
    debug_assert_eq!(is_h2, second);
    if !h_lengths(spec).contains(&len) {
        return Err(ConstructError::NotClaimed { len });
    }
    if (p, q, r) == (1, 1, 1) && matches!(len, 3 | 5) {
        let kept = TriangleEdge::ALL.into_iter().find(|t| !deleted.contains(t));
        return k33_cycle(inst, kept, len);
    }
    let h = HRoles { inst };
    let seq = if second {
        h2_core_cycle(&h, p, q, r, len)
    } else {
        h1_core_cycle(&h, p, q, r, len)
    };
    let seq = seq.ok_or_else(|| ConstructError::Unsupported(format!("no pattern for length {len} in {spec}")))?;
    gate(&inst.graph, seq, len)
}

pub fn h1_cycle(inst: &LabeledInstance, len: usize) -> Result<VertexSeq, ConstructError> {
    h_cycle(inst, len, false)
}

pub fn h2_cycle(inst: &LabeledInstance, len: usize) -> Result<VertexSeq, ConstructError> {
    h_cycle(inst, len, true)
}

// ---------------------------------------------------------------- dispatch

/// Cycle lengths the constructions cover for this instance; for every
/// supported family this is the full cycle spectrum.
pub fn claimed_lengths(inst: &LabeledInstance) -> Result<BTreeSet<usize>, ConstructError> {
    Ok(match spec_of(inst)? {
        FamilySpec::Mobius { k } => mobius_lengths(*k),
        FamilySpec::Bicycle { .. } => bicycle_lengths(inst)?,
        FamilySpec::Wheel { n } => (3..=*n).collect(),
        FamilySpec::K33Chain { extra_edges } if extra_edges.is_empty() => [4, 6].into(),
        FamilySpec::K33Chain { .. } => (3..=6).collect(),
        spec @ (FamilySpec::H1 { .. } | FamilySpec::H2 { .. }) => h_lengths(spec),
    })
}

/// A validated cycle of length `len` built from the family structure.
pub fn cycle_of_length(inst: &LabeledInstance, len: usize) -> Result<VertexSeq, ConstructError> {
    match spec_of(inst)? {
        FamilySpec::Mobius { .. } => mobius_cycle(inst, len),
        FamilySpec::Bicycle { .. } => bicycle_any_cycle(inst, len),
        FamilySpec::Wheel { .. } => wheel_cycle(inst, len),
        FamilySpec::K33Chain { .. } => k33_chain_cycle(inst, len),
        FamilySpec::H1 { .. } => h1_cycle(inst, len),
        FamilySpec::H2 { .. } => h2_cycle(inst, len),
    }
}

/// Spectrum with one validated witness per claimed length.
pub fn constructive_spectrum(inst: &LabeledInstance) -> Result<CycleSpectrum, ConstructError> {
    let lengths = claimed_lengths(inst)?;
    let mut witnesses = std::collections::BTreeMap::new();
    for &len in &lengths {
        witnesses.insert(len, cycle_of_length(inst, len)?);
    }
    Ok(CycleSpectrum {
        n: inst.n(),
        lengths,
        witnesses,
    })
}

/// Formula variants with the index slips described in the module notes,
/// next to their repaired forms. They are kept so tests can show the
/// validator rejecting one and accepting the other.
pub mod uncorrected {
    use crate::families::{LabeledInstance, VertexRole};
    use crate::graph::{Edge, Vertex};

    /// Follows an edge list from `start`, emitting each vertex reached. An
    /// edge not touching the current vertex contributes its first endpoint,
    /// which the validator then flags.
    pub fn edge_walk(start: Vertex, edges: &[Edge]) -> Vec<Vertex> {
        let mut seq = vec![start];
        let mut cur = start;
        for e in edges {
            cur = e.other(cur).unwrap_or(e.u);
            seq.push(cur);
        }
        seq
    }

    fn a_ham_edges(n: usize, second_rim: usize) -> Vec<Edge> {
        let (s, t) = (n, n - 1);
        let rim = n - 2;
        let r = |i: usize| Edge::new(i, i % rim + 1);
        let mut edges = vec![Edge::new(s, 1), r(1), Edge::new(t, 2), Edge::new(t, n - 2)];
        edges.extend((3..=second_rim).rev().map(r));
        edges.push(Edge::new(s, 3));
        edges
    }

    /// Hamiltonian cycle of `A_n` (even `n`) as the edge word
    /// `s_1 r_1 t_2 t_{n-2} r_{n-2} … r_3 s_3`.
    pub fn a_ham_edges_uncorrected(n: usize) -> Vec<Edge> {
        a_ham_edges(n, n - 2)
    }

    /// The same word with the rim run starting at `r_{n-3}`.
    pub fn a_ham_edges_corrected(n: usize) -> Vec<Edge> {
        a_ham_edges(n, n - 3)
    }

    /// `b, x_1, …, x_p, a, y_1, …, y_q` offered as a `(p+q+1)`-cycle of the
    /// fully deleted `H1(p,q,r)`.
    pub fn h1_row_uncorrected(inst: &LabeledInstance, p: usize, q: usize) -> Vec<Vertex> {
        h1_row(inst, 1, p, q)
    }

    /// The same row starting at `x_2`.
    pub fn h1_row_corrected(inst: &LabeledInstance, p: usize, q: usize) -> Vec<Vertex> {
        h1_row(inst, 2, p, q)
    }

    fn h1_row(inst: &LabeledInstance, first_x: usize, p: usize, q: usize) -> Vec<Vertex> {
        let mut s = vec![inst.v(VertexRole::B)];
        s.extend((first_x..=p).map(|i| inst.v(VertexRole::X(i))));
        s.push(inst.v(VertexRole::A));
        s.extend((1..=q).map(|i| inst.v(VertexRole::Y(i))));
        s
    }

    /// `a, x_p, …, x_1, b, y_{j-1}, …, y_q, c, z_1, …, z_r`: the fully
    /// deleted `H2` cycle meant to skip `y_1..y_j` (length `n - j`).
    pub fn h2_skip_y_uncorrected(inst: &LabeledInstance, p: usize, q: usize, r: usize, j: usize) -> Vec<Vertex> {
        h2_skip_y(inst, p, q, r, j - 1)
    }

    /// The same cycle resuming at `y_{j+1}`.
    pub fn h2_skip_y_corrected(inst: &LabeledInstance, p: usize, q: usize, r: usize, j: usize) -> Vec<Vertex> {
        h2_skip_y(inst, p, q, r, j + 1)
    }

    fn h2_skip_y(inst: &LabeledInstance, p: usize, q: usize, r: usize, first_y: usize) -> Vec<Vertex> {
        let mut s = vec![inst.v(VertexRole::A)];
        s.extend((1..=p).rev().map(|i| inst.v(VertexRole::X(i))));
        s.push(inst.v(VertexRole::B));
        s.extend((first_y..=q).map(|i| inst.v(VertexRole::Y(i))));
        s.push(inst.v(VertexRole::C));
        s.extend((1..=r).map(|i| inst.v(VertexRole::Z(i))));
        s
    }

    /// `1, …, t/2, k+t/2, …, k+1`: meant as a `2t`-cycle, has `t` vertices.
    pub fn mobius_even(k: usize, t: usize) -> Vec<Vertex> {
        let h = t / 2;
        let mut s: Vec<Vertex> = (1..=h).collect();
        s.extend((k + 1..=k + h).rev());
        s.push(1);
        s
    }

    /// Longest odd Möbius cycle closed `…, k-1, 2k, 1`.
    pub fn mobius_longest_odd(k: usize) -> Vec<Vertex> {
        let mut s = super::mobius_odd(k, (k - 2) / 2);
        s.pop();
        s.push(1);
        s
    }

    /// Rim-to-rim bicycle path that heads back down from `n-2`.
    pub fn bicycle_ham_path_nonadjacent(n: usize, i: usize, j: usize) -> Vec<Vertex> {
        let mut s: Vec<Vertex> = (i..j).collect();
        s.extend([n, n - 1]);
        s.extend((j - 1..=n - 2).rev());
        s.push(j);
        s
    }
}
