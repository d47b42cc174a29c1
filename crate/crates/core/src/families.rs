//! Generators for the Möbius ladders, bicycle wheels and their spoke
//! deletions, wheels, the `K_{3,3}` chain and the fan-extended families
//! `H1(p,q,r)` / `H2(p,q,r)`.
//!
//! Every generator returns a [`LabeledInstance`]: the graph plus a role for
//! each vertex and each edge, so the cycle builders can address vertices by
//! name (`x_3`, the s-hub, rim vertex 5) instead of by number.
//!
//! Labelling conventions:
//!
//! * Möbius ladder `V_{2k}`: rails `1, 2, …, k-1, 2k` and
//!   `k+1, …, 2k-1, k`, rungs `{i, k+i}` for `1 <= i <= k`, twist edges
//!   `{1, k}` and `{k+1, 2k}`.
//! * Bicycle wheel `B_n`: rim `1..=n-2` with `r_i = {i, i+1}` (cyclic),
//!   s-hub `n`, t-hub `n-1`, `s_i = {n, i}`, `t_i = {n-1, i}`, axle
//!   `z = {n-1, n}`.
//! * `K_{3,3}`: classes `{a, b, c} = {1, 2, 3}` and
//!   `{x_1, y_1, z_1} = {4, 5, 6}`; fan vertices are appended in the order
//!   `x_2..x_p`, `y_2..y_q`, `z_2..z_r`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{are_isomorphic, is_k_connected, wl_hash, Edge, Graph, GraphError, Vertex};
use crate::planarity::is_planar;

/// Largest bicycle wheel the minor enumeration accepts by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("edges {0} and {1} do not lie on a common triangle")]
    NotTriangle(Edge, Edge),
    #[error("fan sides {0} and {1} do not share a vertex")]
    SidesDisjoint(Edge, Edge),
    #[error("removing both s_{0} and t_{0} violates 3-connectivity precondition")]
    ViolatesThreeConnectivity(usize),
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One of the three edges inside the class `{a, b, c}` of `K_{3,3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriangleEdge {
    Ab,
    Bc,
    Ac,
}

impl TriangleEdge {
    pub const ALL: [TriangleEdge; 3] = [TriangleEdge::Ab, TriangleEdge::Bc, TriangleEdge::Ac];

    fn roles(self) -> (VertexRole, VertexRole) {
        match self {
            TriangleEdge::Ab => (VertexRole::A, VertexRole::B),
            TriangleEdge::Bc => (VertexRole::B, VertexRole::C),
            TriangleEdge::Ac => (VertexRole::A, VertexRole::C),
        }
    }

    fn edge_role(self) -> EdgeRole {
        match self {
            TriangleEdge::Ab => EdgeRole::Ab,
            TriangleEdge::Bc => EdgeRole::Bc,
            TriangleEdge::Ac => EdgeRole::Ac,
        }
    }

    /// All 8 subsets, smallest first.
    pub fn subsets() -> Vec<BTreeSet<TriangleEdge>> {
        (0u8..8)
            .map(|mask| {
                TriangleEdge::ALL
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &t)| t)
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for TriangleEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriangleEdge::Ab => "ab",
            TriangleEdge::Bc => "bc",
            TriangleEdge::Ac => "ac",
        })
    }
}

impl FromStr for TriangleEdge {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ab" | "ba" => Ok(TriangleEdge::Ab),
            "bc" | "cb" => Ok(TriangleEdge::Bc),
            "ac" | "ca" => Ok(TriangleEdge::Ac),
            other => Err(FamilyError::InvalidParameter(format!(
                "expected one of ab, bc, ac, got {other:?}"
            ))),
        }
    }
}

/// Which family instance to build.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilySpec {
    Mobius {
        k: usize,
    },
    Bicycle {
        n: usize,
        #[serde(default)]
        removed_s: BTreeSet<usize>,
        #[serde(default)]
        removed_t: BTreeSet<usize>,
    },
    /// Wheel on `n` vertices: hub plus an `(n-1)`-cycle.
    Wheel {
        n: usize,
    },
    #[serde(rename = "k33chain")]
    K33Chain {
        #[serde(default)]
        extra_edges: BTreeSet<TriangleEdge>,
    },
    H1 {
        p: usize,
        q: usize,
        r: usize,
        #[serde(default)]
        deleted: BTreeSet<TriangleEdge>,
    },
    H2 {
        p: usize,
        q: usize,
        r: usize,
        #[serde(default)]
        deleted: BTreeSet<TriangleEdge>,
    },
}

impl FamilySpec {
    pub fn full_bicycle(n: usize) -> Self {
        FamilySpec::Bicycle {
            n,
            removed_s: BTreeSet::new(),
            removed_t: BTreeSet::new(),
        }
    }

    /// Alternating spokes: s-spokes on odd rim vertices, t-spokes on even.
    pub fn a_graph(n: usize) -> Self {
        let rim = 1..=n.saturating_sub(2);
        FamilySpec::Bicycle {
            n,
            removed_s: rim.clone().filter(|i| i % 2 == 0).collect(),
            removed_t: rim.filter(|i| i % 2 == 1).collect(),
        }
    }

    pub fn h1_full(p: usize, q: usize, r: usize) -> Self {
        FamilySpec::H1 {
            p,
            q,
            r,
            deleted: TriangleEdge::ALL.into_iter().collect(),
        }
    }

    pub fn h2_full(p: usize, q: usize, r: usize) -> Self {
        FamilySpec::H2 {
            p,
            q,
            r,
            deleted: TriangleEdge::ALL.into_iter().collect(),
        }
    }

    /// Vertex count of the generated graph.
    pub fn vertex_count(&self) -> usize {
        match self {
            FamilySpec::Mobius { k } => 2 * k,
            FamilySpec::Bicycle { n, .. } | FamilySpec::Wheel { n } => *n,
            FamilySpec::K33Chain { .. } => 6,
            FamilySpec::H1 { p, q, r, .. } | FamilySpec::H2 { p, q, r, .. } => p + q + r + 3,
        }
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let bad = |msg: String| Err(FamilyError::InvalidParameter(msg));
        match self {
            FamilySpec::Mobius { k } if *k < 3 => bad(format!("Möbius ladder needs k >= 3, got {k}")),
            FamilySpec::Bicycle {
                n,
                removed_s,
                removed_t,
            } => {
                if *n < 5 {
                    return bad(format!("bicycle wheel needs n >= 5, got {n}"));
                }
                if let Some(i) = removed_s
                    .iter()
                    .chain(removed_t)
                    .find(|&&i| i == 0 || i > n - 2)
                {
                    return bad(format!("spoke index {i} outside 1..={}", n - 2));
                }
                Ok(())
            }
            FamilySpec::Wheel { n } if *n < 4 => bad(format!("wheel needs n >= 4, got {n}")),
            FamilySpec::H1 { p, q, r, .. } | FamilySpec::H2 { p, q, r, .. }
                if *p < 1 || *q < 1 || *r < 1 =>
            {
                bad(format!("fan lengths must be >= 1, got p={p} q={q} r={r}"))
            }
            _ => Ok(()),
        }
    }

    /// Builds the instance. Bicycle specs that strip a rim vertex of both
    /// spokes are produced with a warning; use [`gen_bicycle`] with
    /// `require_3connected` to reject them instead.
    pub fn generate(&self) -> Result<LabeledInstance, FamilyError> {
        match self {
            FamilySpec::Mobius { k } => gen_mobius(*k),
            FamilySpec::Bicycle { .. } => gen_bicycle(self, false),
            FamilySpec::Wheel { n } => gen_wheel(*n),
            FamilySpec::K33Chain { extra_edges } => gen_k33_chain(extra_edges),
            FamilySpec::H1 { .. } | FamilySpec::H2 { .. } => gen_h(self),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }
}

fn list(set: &BTreeSet<impl fmt::Display>) -> String {
    set.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Mobius { k } => write!(f, "V{}", 2 * k),
            FamilySpec::Bicycle {
                n,
                removed_s,
                removed_t,
            } => {
                if removed_s.is_empty() && removed_t.is_empty() {
                    write!(f, "B{n}")
                } else {
                    write!(f, "B{n}-s[{}]-t[{}]", list(removed_s), list(removed_t))
                }
            }
            FamilySpec::Wheel { n } => write!(f, "W(n={n})"),
            FamilySpec::K33Chain { extra_edges } => write!(f, "K33+[{}]", list(extra_edges)),
            FamilySpec::H1 { p, q, r, deleted } => {
                write!(f, "H1({p},{q},{r})-[{}]", list(deleted))
            }
            FamilySpec::H2 { p, q, r, deleted } => {
                write!(f, "H2({p},{q},{r})-[{}]", list(deleted))
            }
        }
    }
}

/// Role of a vertex in a family instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexRole {
    Rim(usize),
    HubS,
    HubT,
    A,
    B,
    C,
    X(usize),
    Y(usize),
    Z(usize),
    LadderLeft(usize),
    LadderRight(usize),
    WheelHub,
    WheelRim(usize),
    /// Path vertex of a fan attached outside the H-families.
    Fan(usize),
}

/// Role of an edge in a family instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeRole {
    Rim(usize),
    S(usize),
    T(usize),
    Axle,
    FanPath,
    FanSpoke,
    Ab,
    Bc,
    Ac,
    /// `K_{3,3}` edge between the classes `{a,b,c}` and `{x_1,y_1,z_1}`.
    Cross,
    LadderSide,
    LadderRung,
    LadderTwist,
    WheelRim(usize),
    WheelSpoke(usize),
}

impl fmt::Display for VertexRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexRole::Rim(i) => write!(f, "rim:{i}"),
            VertexRole::HubS => f.write_str("hub-s"),
            VertexRole::HubT => f.write_str("hub-t"),
            VertexRole::A => f.write_str("a"),
            VertexRole::B => f.write_str("b"),
            VertexRole::C => f.write_str("c"),
            VertexRole::X(i) => write!(f, "x:{i}"),
            VertexRole::Y(i) => write!(f, "y:{i}"),
            VertexRole::Z(i) => write!(f, "z:{i}"),
            VertexRole::LadderLeft(i) => write!(f, "ladder-left:{i}"),
            VertexRole::LadderRight(i) => write!(f, "ladder-right:{i}"),
            VertexRole::WheelHub => f.write_str("wheel-hub"),
            VertexRole::WheelRim(i) => write!(f, "wheel-rim:{i}"),
            VertexRole::Fan(i) => write!(f, "fan:{i}"),
        }
    }
}

impl fmt::Display for EdgeRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeRole::Rim(i) => write!(f, "r:{i}"),
            EdgeRole::S(i) => write!(f, "s:{i}"),
            EdgeRole::T(i) => write!(f, "t:{i}"),
            EdgeRole::Axle => f.write_str("z"),
            EdgeRole::FanPath => f.write_str("fan-path"),
            EdgeRole::FanSpoke => f.write_str("fan-spoke"),
            EdgeRole::Ab => f.write_str("ab"),
            EdgeRole::Bc => f.write_str("bc"),
            EdgeRole::Ac => f.write_str("ac"),
            EdgeRole::Cross => f.write_str("cross"),
            EdgeRole::LadderSide => f.write_str("ladder-side"),
            EdgeRole::LadderRung => f.write_str("ladder-rung"),
            EdgeRole::LadderTwist => f.write_str("ladder-twist"),
            EdgeRole::WheelRim(i) => write!(f, "wheel-rim:{i}"),
            EdgeRole::WheelSpoke(i) => write!(f, "wheel-spoke:{i}"),
        }
    }
}

fn split_index(s: &str) -> Result<(&str, Option<usize>), String> {
    match s.split_once(':') {
        Some((head, idx)) => idx
            .parse()
            .map(|i| (head, Some(i)))
            .map_err(|_| format!("bad role index in {s:?}")),
        None => Ok((s, None)),
    }
}

impl FromStr for VertexRole {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match split_index(s)? {
            ("rim", Some(i)) => VertexRole::Rim(i),
            ("hub-s", None) => VertexRole::HubS,
            ("hub-t", None) => VertexRole::HubT,
            ("a", None) => VertexRole::A,
            ("b", None) => VertexRole::B,
            ("c", None) => VertexRole::C,
            ("x", Some(i)) => VertexRole::X(i),
            ("y", Some(i)) => VertexRole::Y(i),
            ("z", Some(i)) => VertexRole::Z(i),
            ("ladder-left", Some(i)) => VertexRole::LadderLeft(i),
            ("ladder-right", Some(i)) => VertexRole::LadderRight(i),
            ("wheel-hub", None) => VertexRole::WheelHub,
            ("wheel-rim", Some(i)) => VertexRole::WheelRim(i),
            ("fan", Some(i)) => VertexRole::Fan(i),
            _ => return Err(format!("unknown vertex role {s:?}")),
        })
    }
}

impl FromStr for EdgeRole {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match split_index(s)? {
            ("r", Some(i)) => EdgeRole::Rim(i),
            ("s", Some(i)) => EdgeRole::S(i),
            ("t", Some(i)) => EdgeRole::T(i),
            ("z", None) => EdgeRole::Axle,
            ("fan-path", None) => EdgeRole::FanPath,
            ("fan-spoke", None) => EdgeRole::FanSpoke,
            ("ab", None) => EdgeRole::Ab,
            ("bc", None) => EdgeRole::Bc,
            ("ac", None) => EdgeRole::Ac,
            ("cross", None) => EdgeRole::Cross,
            ("ladder-side", None) => EdgeRole::LadderSide,
            ("ladder-rung", None) => EdgeRole::LadderRung,
            ("ladder-twist", None) => EdgeRole::LadderTwist,
            ("wheel-rim", Some(i)) => EdgeRole::WheelRim(i),
            ("wheel-spoke", Some(i)) => EdgeRole::WheelSpoke(i),
            _ => return Err(format!("unknown edge role {s:?}")),
        })
    }
}

macro_rules! string_serde {
    ($t:ty) => {
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(VertexRole);
string_serde!(EdgeRole);

/// A graph with a role for every vertex and every edge.
#[derive(Debug, Clone)]
pub struct LabeledInstance {
    /// The spec this instance realises; `None` for intermediate results
    /// such as a bare fan attachment.
    pub spec: Option<FamilySpec>,
    pub graph: Graph,
    vertex_roles: Vec<VertexRole>,
    edge_roles: BTreeMap<Edge, EdgeRole>,
    index: HashMap<VertexRole, Vertex>,
    /// Non-fatal generator diagnostics (e.g. a rim vertex of degree 2).
    pub warnings: Vec<String>,
}

impl LabeledInstance {
    pub fn new(
        spec: Option<FamilySpec>,
        graph: Graph,
        vertex_roles: Vec<VertexRole>,
        edge_roles: BTreeMap<Edge, EdgeRole>,
    ) -> Self {
        assert_eq!(vertex_roles.len(), graph.n(), "one role per vertex");
        assert_eq!(edge_roles.len(), graph.m(), "one role per edge");
        debug_assert!(graph.edges().all(|e| edge_roles.contains_key(&e)));
        let index = vertex_roles
            .iter()
            .enumerate()
            .map(|(i, &r)| (r, i + 1))
            .collect::<HashMap<_, _>>();
        assert_eq!(index.len(), graph.n(), "vertex roles must be distinct");
        LabeledInstance {
            spec,
            graph,
            vertex_roles,
            edge_roles,
            index,
            warnings: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn vertex(&self, role: VertexRole) -> Option<Vertex> {
        self.index.get(&role).copied()
    }

    /// Like [`vertex`](Self::vertex) but panics on a missing role; for
    /// builders that already checked the family.
    pub fn v(&self, role: VertexRole) -> Vertex {
        self.vertex(role)
            .unwrap_or_else(|| panic!("instance has no vertex with role {role}"))
    }

    pub fn vertex_role(&self, v: Vertex) -> VertexRole {
        self.vertex_roles[v - 1]
    }

    pub fn vertex_roles(&self) -> &[VertexRole] {
        &self.vertex_roles
    }

    pub fn edge_role(&self, e: Edge) -> Option<EdgeRole> {
        self.edge_roles.get(&e).copied()
    }

    pub fn edge_roles(&self) -> &BTreeMap<Edge, EdgeRole> {
        &self.edge_roles
    }

    /// The edge carrying `role`, when exactly one does.
    pub fn edge_with_role(&self, role: EdgeRole) -> Option<Edge> {
        let mut hits = self.edge_roles.iter().filter(|(_, &r)| r == role);
        let first = hits.next().map(|(&e, _)| e);
        if hits.next().is_some() {
            None
        } else {
            first
        }
    }

    /// Drops the given edges together with their roles.
    pub fn without_edges(&self, edges: &[Edge]) -> Result<LabeledInstance, FamilyError> {
        let graph = self.graph.delete_edges(edges)?;
        let mut roles = self.edge_roles.clone();
        for e in edges {
            roles.remove(e);
        }
        let mut out = LabeledInstance::new(self.spec.clone(), graph, self.vertex_roles.clone(), roles);
        out.warnings = self.warnings.clone();
        Ok(out)
    }

    /// Sidecar role map written next to the edge list.
    pub fn role_map_json(&self) -> serde_json::Value {
        let vertices: serde_json::Map<String, serde_json::Value> = self
            .vertex_roles
            .iter()
            .enumerate()
            .map(|(i, r)| ((i + 1).to_string(), serde_json::Value::String(r.to_string())))
            .collect();
        let edges: Vec<serde_json::Value> = self
            .edge_roles
            .iter()
            .map(|(e, r)| serde_json::json!({"u": e.u, "v": e.v, "role": r.to_string()}))
            .collect();
        serde_json::json!({
            "schema": crate::SCHEMA_VERSION,
            "spec": self.spec,
            "n": self.graph.n(),
            "m": self.graph.m(),
            "vertices": vertices,
            "edges": edges,
            "warnings": self.warnings,
        })
    }

    /// Graphviz export with roles as attributes.
    pub fn to_dot(&self) -> String {
        let name = self
            .spec
            .as_ref()
            .map(|s| s.to_string())
            .unwrap_or_else(|| "G".into());
        let mut out = format!("graph \"{name}\" {{\n");
        for (i, r) in self.vertex_roles.iter().enumerate() {
            out.push_str(&format!(
                "  {} [role=\"{r}\", label=\"{} ({r})\"];\n",
                i + 1,
                i + 1
            ));
        }
        for (e, r) in &self.edge_roles {
            out.push_str(&format!("  {} -- {} [role=\"{r}\", label=\"{r}\"];\n", e.u, e.v));
        }
        out.push_str("}\n");
        out
    }
}

/// Maps any integer onto the rim `1..=rim_len`, cyclically.
pub fn rim_wrap(i: i64, rim_len: usize) -> usize {
    let len = rim_len as i64;
    ((i - 1).rem_euclid(len) + 1) as usize
}

pub fn gen_mobius(k: usize) -> Result<LabeledInstance, FamilyError> {
    let spec = FamilySpec::Mobius { k };
    spec.validate()?;
    let n = 2 * k;
    let rail_a: Vec<Vertex> = (1..k).chain(std::iter::once(2 * k)).collect();
    let rail_b: Vec<Vertex> = (k + 1..2 * k).chain(std::iter::once(k)).collect();
    let mut roles = BTreeMap::new();
    for rail in [&rail_a, &rail_b] {
        for w in rail.windows(2) {
            roles.insert(Edge::new(w[0], w[1]), EdgeRole::LadderSide);
        }
    }
    for i in 1..=k {
        roles.insert(Edge::new(i, k + i), EdgeRole::LadderRung);
    }
    roles.insert(Edge::new(1, k), EdgeRole::LadderTwist);
    roles.insert(Edge::new(k + 1, 2 * k), EdgeRole::LadderTwist);
    let graph = Graph::from_edge_set(n, roles.keys().copied());
    let vertex_roles = (1..=n)
        .map(|v| {
            if v <= k {
                VertexRole::LadderLeft(v)
            } else {
                VertexRole::LadderRight(v - k)
            }
        })
        .collect();
    Ok(LabeledInstance::new(Some(spec), graph, vertex_roles, roles))
}

/// Builds a (possibly spoke-deleted) bicycle wheel.
///
/// With `require_3connected`, a rim vertex losing both of its spokes is an
/// error; otherwise the graph is produced and a warning recorded.
pub fn gen_bicycle(spec: &FamilySpec, require_3connected: bool) -> Result<LabeledInstance, FamilyError> {
    let FamilySpec::Bicycle {
        n,
        removed_s,
        removed_t,
    } = spec
    else {
        return Err(FamilyError::InvalidParameter(format!("{spec} is not a bicycle spec")));
    };
    spec.validate()?;
    let n = *n;
    let rim = n - 2;
    let (hub_s, hub_t) = (n, n - 1);
    let mut warnings = Vec::new();
    if let Some(&i) = removed_s.intersection(removed_t).next() {
        if require_3connected {
            return Err(FamilyError::ViolatesThreeConnectivity(i));
        }
        warnings.push(format!(
            "rim vertex {i} lost both spokes; graph is not 3-connected"
        ));
    }
    let mut roles = BTreeMap::new();
    for i in 1..=rim {
        roles.insert(Edge::new(i, rim_wrap(i as i64 + 1, rim)), EdgeRole::Rim(i));
        if !removed_s.contains(&i) {
            roles.insert(Edge::new(hub_s, i), EdgeRole::S(i));
        }
        if !removed_t.contains(&i) {
            roles.insert(Edge::new(hub_t, i), EdgeRole::T(i));
        }
    }
    roles.insert(Edge::new(hub_t, hub_s), EdgeRole::Axle);
    let graph = Graph::from_edge_set(n, roles.keys().copied());
    let vertex_roles = (1..=n)
        .map(|v| match v {
            v if v == hub_s => VertexRole::HubS,
            v if v == hub_t => VertexRole::HubT,
            v => VertexRole::Rim(v),
        })
        .collect();
    let mut inst = LabeledInstance::new(Some(spec.clone()), graph, vertex_roles, roles);
    inst.warnings = warnings;
    Ok(inst)
}

pub fn gen_a_graph(n: usize) -> Result<LabeledInstance, FamilyError> {
    if n < 5 {
        return Err(FamilyError::InvalidParameter(format!("A_n needs n >= 5, got {n}")));
    }
    gen_bicycle(&FamilySpec::a_graph(n), true)
}

pub fn gen_wheel(n: usize) -> Result<LabeledInstance, FamilyError> {
    let spec = FamilySpec::Wheel { n };
    spec.validate()?;
    let rim = n - 1;
    let mut roles = BTreeMap::new();
    for i in 1..=rim {
        roles.insert(Edge::new(i, i % rim + 1), EdgeRole::WheelRim(i));
        roles.insert(Edge::new(i, n), EdgeRole::WheelSpoke(i));
    }
    let graph = Graph::from_edge_set(n, roles.keys().copied());
    let vertex_roles = (1..=n)
        .map(|v| if v == n { VertexRole::WheelHub } else { VertexRole::WheelRim(v) })
        .collect();
    Ok(LabeledInstance::new(Some(spec), graph, vertex_roles, roles))
}

/// `K_{3,3}` plus the requested edges inside `{a, b, c}`.
pub fn gen_k33_chain(extra: &BTreeSet<TriangleEdge>) -> Result<LabeledInstance, FamilyError> {
    let vertex_roles = vec![
        VertexRole::A,
        VertexRole::B,
        VertexRole::C,
        VertexRole::X(1),
        VertexRole::Y(1),
        VertexRole::Z(1),
    ];
    let mut roles = BTreeMap::new();
    for u in 1..=3 {
        for v in 4..=6 {
            roles.insert(Edge::new(u, v), EdgeRole::Cross);
        }
    }
    for t in extra {
        let (x, y) = t.roles();
        let pos = |r| vertex_roles.iter().position(|&q| q == r).unwrap() + 1;
        roles.insert(Edge::new(pos(x), pos(y)), t.edge_role());
    }
    let graph = Graph::from_edge_set(6, roles.keys().copied());
    Ok(LabeledInstance::new(
        Some(FamilySpec::K33Chain {
            extra_edges: extra.clone(),
        }),
        graph,
        vertex_roles,
        roles,
    ))
}

/// Which role family the new fan vertices receive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FanName {
    X,
    Y,
    Z,
    Generic,
}

impl FanName {
    fn role(self, i: usize) -> VertexRole {
        match self {
            FanName::X => VertexRole::X(i),
            FanName::Y => VertexRole::Y(i),
            FanName::Z => VertexRole::Z(i),
            FanName::Generic => VertexRole::Fan(i),
        }
    }
}

/// Attaches a type-1 fan of the given length across the triangle spanned by
/// the two `sides`, which must share a vertex (the fan hub).
///
/// Writing `sides = ({hub, e_end}, {hub, f_end})`, the third triangle edge
/// `{e_end, f_end}` is replaced by the path
/// `f_end, w_2, …, w_length, e_end` and every path vertex except `e_end`
/// is joined to the hub. New vertices get labels `n+1, n+2, …` and the
/// roles `name(2), name(3), …`. Length 1 returns the instance unchanged.
pub fn attach_fan(
    inst: &LabeledInstance,
    sides: (Edge, Edge),
    length: usize,
    name: FanName,
) -> Result<LabeledInstance, FamilyError> {
    let (e, f) = sides;
    if length < 1 {
        return Err(FamilyError::InvalidParameter("fan length must be >= 1".into()));
    }
    let g = &inst.graph;
    for side in [e, f] {
        if !g.contains(side) {
            return Err(FamilyError::Graph(GraphError::NoSuchEdge(side)));
        }
    }
    let hub = e.common_vertex(&f).ok_or(FamilyError::SidesDisjoint(e, f))?;
    let e_end = e.other(hub).unwrap();
    let f_end = f.other(hub).unwrap();
    let third = Edge::new(e_end, f_end);
    if !g.contains(third) {
        return Err(FamilyError::NotTriangle(e, f));
    }
    if length == 1 {
        let mut out = inst.clone();
        out.spec = None;
        return Ok(out);
    }
    let n0 = g.n();
    let new: Vec<Vertex> = (n0 + 1..=n0 + length - 1).collect();
    let mut roles = inst.edge_roles.clone();
    roles.remove(&third);
    let mut path = vec![f_end];
    path.extend(&new);
    path.push(e_end);
    for w in path.windows(2) {
        roles.insert(Edge::new(w[0], w[1]), EdgeRole::FanPath);
    }
    for &v in &path[..path.len() - 1] {
        roles.insert(Edge::new(hub, v), EdgeRole::FanSpoke);
    }
    let mut vertex_roles = inst.vertex_roles.clone();
    vertex_roles.extend((2..=length).map(|i| name.role(i)));
    let graph = Graph::from_edge_set(n0 + length - 1, roles.keys().copied());
    let mut out = LabeledInstance::new(None, graph, vertex_roles, roles);
    out.warnings = inst.warnings.clone();
    Ok(out)
}

fn gen_h(spec: &FamilySpec) -> Result<LabeledInstance, FamilyError> {
    spec.validate()?;
    let (p, q, r, deleted, second) = match spec {
        FamilySpec::H1 { p, q, r, deleted } => (*p, *q, *r, deleted, false),
        FamilySpec::H2 { p, q, r, deleted } => (*p, *q, *r, deleted, true),
        _ => unreachable!(),
    };
    let mut inst = gen_k33_chain(&TriangleEdge::ALL.into_iter().collect())?;
    let (a, b, c) = (inst.v(VertexRole::A), inst.v(VertexRole::B), inst.v(VertexRole::C));
    let (x1, y1, z1) = (
        inst.v(VertexRole::X(1)),
        inst.v(VertexRole::Y(1)),
        inst.v(VertexRole::Z(1)),
    );
    inst = attach_fan(&inst, (Edge::new(a, b), Edge::new(b, x1)), p, FanName::X)?;
    inst = attach_fan(&inst, (Edge::new(b, c), Edge::new(b, y1)), q, FanName::Y)?;
    let third = if second {
        (Edge::new(a, b), Edge::new(a, z1))
    } else {
        (Edge::new(a, b), Edge::new(b, z1))
    };
    inst = attach_fan(&inst, third, r, FanName::Z)?;
    let drop: Vec<Edge> = deleted
        .iter()
        .map(|t| {
            let (x, y) = t.roles();
            Edge::new(inst.v(x), inst.v(y))
        })
        .collect();
    let mut out = inst.without_edges(&drop)?;
    out.spec = Some(spec.clone());
    Ok(out)
}

pub fn gen_h1(p: usize, q: usize, r: usize, deleted: BTreeSet<TriangleEdge>) -> Result<LabeledInstance, FamilyError> {
    gen_h(&FamilySpec::H1 { p, q, r, deleted })
}

pub fn gen_h2(p: usize, q: usize, r: usize, deleted: BTreeSet<TriangleEdge>) -> Result<LabeledInstance, FamilyError> {
    gen_h(&FamilySpec::H2 { p, q, r, deleted })
}

/// `B_n` with `s_i`, `t_i` deleted and then `r_{i-1}` contracted (indices
/// cyclic, so `r_0 = r_{n-2}`). Deleting first keeps the two spokes at the
/// merged vertex distinct from the ones being removed.
pub fn bicycle_reduction(n: usize, i: usize) -> Result<Graph, FamilyError> {
    let inst = gen_bicycle(&FamilySpec::full_bicycle(n), false)?;
    let rim = n - 2;
    if i == 0 || i > rim {
        return Err(FamilyError::InvalidParameter(format!("rim index {i} outside 1..={rim}")));
    }
    let find = |role| inst.edge_with_role(role).expect("full bicycle has every edge");
    let reduced = inst
        .graph
        .delete_edges(&[find(EdgeRole::S(i)), find(EdgeRole::T(i))])?;
    let prev = rim_wrap(i as i64 - 1, rim);
    Ok(reduced.contract_edge(find(EdgeRole::Rim(prev)))?)
}

/// Per-rim-vertex spoke state in the minor enumeration.
const BOTH: u8 = 0;
const S_ONLY: u8 = 1;
const T_ONLY: u8 = 2;
const NONE: u8 = 3;

fn states_to_spec(n: usize, states: &[u8]) -> FamilySpec {
    let idx = |want: &[u8]| -> BTreeSet<usize> {
        states
            .iter()
            .enumerate()
            .filter(|(_, s)| want.contains(s))
            .map(|(i, _)| i + 1)
            .collect()
    };
    FamilySpec::Bicycle {
        n,
        removed_s: idx(&[T_ONLY, NONE]),
        removed_t: idx(&[S_ONLY, NONE]),
    }
}

/// True when `states` is the lexicographically smallest image under rim
/// rotations, reflections and the hub swap.
fn is_orbit_representative(states: &[u8]) -> bool {
    let len = states.len();
    let swap = |s: u8| match s {
        S_ONLY => T_ONLY,
        T_ONLY => S_ONLY,
        other => other,
    };
    let mut image = vec![0u8; len];
    for rot in 0..len {
        for reflect in [false, true] {
            for swapped in [false, true] {
                for (j, slot) in image.iter_mut().enumerate() {
                    let src = if reflect {
                        (rot + len - j) % len
                    } else {
                        (rot + j) % len
                    };
                    let s = states[src];
                    *slot = if swapped { swap(s) } else { s };
                }
                if image.as_slice() < states {
                    return false;
                }
            }
        }
    }
    true
}

/// Spoke-deleted minors of `B_n`, one per isomorphism class, filtered by
/// computed 3-connectivity and non-planarity.
pub fn enumerate_b_minors(
    n: usize,
    require_3connected: bool,
    require_nonplanar: bool,
) -> Result<Vec<FamilySpec>, FamilyError> {
    enumerate_b_minors_capped(n, require_3connected, require_nonplanar, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_b_minors_capped(
    n: usize,
    require_3connected: bool,
    require_nonplanar: bool,
    cap: usize,
) -> Result<Vec<FamilySpec>, FamilyError> {
    if n > cap {
        return Err(FamilyError::CapExceeded { n, cap });
    }
    let reps = bicycle_orbit_representatives(n, !require_3connected)?;
    let kept: Vec<(FamilySpec, Graph)> = reps
        .into_par_iter()
        .filter_map(|spec| {
            let g = gen_bicycle(&spec, false).ok()?.graph;
            if require_3connected && !is_k_connected(&g, 3) {
                return None;
            }
            if require_nonplanar && is_planar(&g) {
                return None;
            }
            Some((spec, g))
        })
        .collect();
    Ok(dedupe_isomorphic(kept).into_iter().map(|(s, _)| s).collect())
}

/// Orbit representatives of spoke patterns under the dihedral rim
/// symmetry and the hub swap, in lexicographic state order. With
/// `allow_bare` a rim vertex may lose both spokes.
pub fn bicycle_orbit_representatives(n: usize, allow_bare: bool) -> Result<Vec<FamilySpec>, FamilyError> {
    if n < 5 {
        return Err(FamilyError::InvalidParameter(format!("bicycle wheel needs n >= 5, got {n}")));
    }
    let rim = n - 2;
    let base: u8 = if allow_bare { 4 } else { 3 };
    let total = (base as u64).pow(rim as u32);
    let reps: Vec<FamilySpec> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut states = vec![BOTH; rim];
            let mut c = code;
            // most significant digit first so numeric order is lexicographic
            for slot in states.iter_mut().rev() {
                *slot = (c % base as u64) as u8;
                c /= base as u64;
            }
            is_orbit_representative(&states).then(|| states_to_spec(n, &states))
        })
        .collect();
    Ok(reps)
}

/// Keeps the first member of every isomorphism class, preserving order.
pub fn dedupe_isomorphic<T>(items: Vec<(T, Graph)>) -> Vec<(T, Graph)> {
    let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut keep: Vec<(T, Graph)> = Vec::new();
    for (tag, g) in items {
        let h = wl_hash(&g);
        let bucket = buckets.entry(h).or_default();
        if bucket.iter().any(|&i| are_isomorphic(&keep[i].1, &g)) {
            continue;
        }
        bucket.push(keep.len());
        keep.push((tag, g));
    }
    keep
}
