//! Recognises which family a 3-connected almost-planar graph belongs to and
//! derives the cycle-structure predictions that come with membership.
//!
//! Gates run first (planarity, 3-connectivity, almost-planarity). A graph
//! that passes every gate but matches no family is reported as
//! [`ClassifyError::NoFamily`]: a candidate counterexample, not a failure
//! of the tool.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::constructive::claimed_lengths;
use crate::families::{gen_bicycle, gen_mobius, FamilySpec, LabeledInstance, TriangleEdge};
use crate::graph::{find_isomorphism, wl_hash, Edge, Graph, Vertex};
use crate::planarity::{is_almost_planar, is_planar, EdgeRef};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("graph has {n} vertices, above the classification cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    /// Passed every gate yet matched no family.
    #[error("3-connected almost-planar graph matches no known family; candidate counterexample")]
    NoFamily,
}

/// Default size cap for the family sweep.
pub const DEFAULT_CLASSIFY_CAP: usize = 64;

/// The first gate the graph stops at, or `AlmostPlanar` when it passes all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Gate {
    #[serde(rename = "planar")]
    Planar,
    #[serde(rename = "not-3-connected")]
    NotThreeConnected,
    #[serde(rename = "not-almost-planar")]
    NotAlmostPlanar,
    #[serde(rename = "almost-planar")]
    AlmostPlanar,
}

/// Properties implied by family membership.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Predictions {
    pub pancyclic: bool,
    pub hamiltonian: bool,
    /// Set only for 4-connected inputs.
    pub hamiltonian_connected: Option<bool>,
    pub spectrum: Option<BTreeSet<usize>>,
    /// False when `spectrum` lists guaranteed lengths only.
    pub spectrum_exact: bool,
}

/// Spectrum implied by a family spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "lengths", rename_all = "lowercase")]
pub enum SpectrumPrediction {
    /// The exact set of cycle lengths.
    Exact(BTreeSet<usize>),
    /// Lengths known to be present; others undetermined.
    Partial(BTreeSet<usize>),
}

impl SpectrumPrediction {
    pub fn lengths(&self) -> &BTreeSet<usize> {
        match self {
            SpectrumPrediction::Exact(s) | SpectrumPrediction::Partial(s) => s,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub gate: Gate,
    pub matched_spec: Option<FamilySpec>,
    /// `iso_map[v - 1]` is the family vertex matched to input vertex `v`.
    pub iso_map: Option<Vec<Vertex>>,
    pub predicted: Option<Predictions>,
    /// Every family spec the input is isomorphic to, in priority order.
    pub all_matches: Vec<FamilySpec>,
    pub failing_edge: Option<Edge>,
    pub evidence: Vec<String>,
}

impl Classification {
    pub fn to_json(&self) -> serde_json::Value {
        let iso = self.iso_map.as_ref().map(|m| {
            m.iter()
                .enumerate()
                .map(|(i, &w)| ((i + 1).to_string(), w))
                .collect::<BTreeMap<String, Vertex>>()
        });
        serde_json::json!({
            "schema": crate::SCHEMA_VERSION,
            "gate": self.gate,
            "spec": self.matched_spec,
            "name": self.matched_spec.as_ref().map(ToString::to_string),
            "iso_map": iso,
            "predicted": self.predicted,
            "all_matches": self.all_matches,
            "failing_edge": self.failing_edge.map(|e| EdgeRef { u: e.u, v: e.v }),
            "evidence": self.evidence,
        })
    }
}

/// Predicted spectrum for a family instance.
pub fn predict_spectrum(inst: &LabeledInstance) -> SpectrumPrediction {
    match claimed_lengths(inst) {
        Ok(set) => SpectrumPrediction::Exact(set),
        Err(_) => SpectrumPrediction::Partial(BTreeSet::new()),
    }
}

fn predictions(g: &Graph, inst: &LabeledInstance) -> Predictions {
    let spectrum = predict_spectrum(inst);
    let n = g.n();
    let four_connected = g.is_k_connected(4);
    let exact = matches!(spectrum, SpectrumPrediction::Exact(_));
    let lengths = spectrum.lengths().clone();
    let pancyclic = four_connected || lengths.contains(&3) || g.has_triangle();
    Predictions {
        pancyclic,
        hamiltonian: pancyclic || lengths.contains(&n),
        hamiltonian_connected: four_connected.then_some(true),
        spectrum: exact.then_some(lengths),
        spectrum_exact: exact,
    }
}

struct Candidate {
    spec: FamilySpec,
    graph: Graph,
    hash: u64,
}

/// Classifier with per-order caches of the enumerated fan families.
pub struct Classifier {
    cap: usize,
    fan_cache: HashMap<usize, Vec<Candidate>>,
}

impl Default for Classifier {
    fn default() -> Self {
        Classifier::with_cap(DEFAULT_CLASSIFY_CAP)
    }
}

impl Classifier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cap(cap: usize) -> Self {
        Classifier {
            cap,
            fan_cache: HashMap::new(),
        }
    }

    pub fn classify(&mut self, g: &Graph) -> Result<Classification, ClassifyError> {
        if g.n() > self.cap {
            return Err(ClassifyError::CapExceeded { n: g.n(), cap: self.cap });
        }
        let stop = |gate, failing_edge, note: &str| Classification {
            gate,
            matched_spec: None,
            iso_map: None,
            predicted: None,
            all_matches: Vec::new(),
            failing_edge,
            evidence: vec![note.to_string()],
        };
        if is_planar(g) {
            return Ok(stop(Gate::Planar, None, "planarity test found an embedding"));
        }
        if !g.is_k_connected(3) {
            return Ok(stop(Gate::NotThreeConnected, None, "a vertex cut of size below 3 exists"));
        }
        let ev = is_almost_planar(g);
        if let Some(e) = ev.failing_edge {
            let e = Edge::new(e.u, e.v);
            let note = format!("edge {e}: both deletion and contraction are non-planar");
            return Ok(stop(Gate::NotAlmostPlanar, Some(e), &note));
        }
        let matches = self.all_matches(g);
        let Some((spec, iso)) = matches.first().cloned() else {
            return Err(ClassifyError::NoFamily);
        };
        let inst = spec.generate().expect("identified specs are valid");
        let mut evidence = vec![format!("matched {spec} ({} isomorphic family specs)", matches.len())];
        if matches.len() > 1 {
            evidence.push("priority order: Möbius, bicycle, fan families".into());
        }
        Ok(Classification {
            gate: Gate::AlmostPlanar,
            predicted: Some(predictions(g, &inst)),
            matched_spec: Some(spec),
            iso_map: Some(iso),
            all_matches: matches.into_iter().map(|(s, _)| s).collect(),
            failing_edge: None,
            evidence,
        })
    }

    /// Family match without gates, highest priority first.
    pub fn identify(&mut self, g: &Graph) -> Option<(FamilySpec, Vec<Vertex>)> {
        identify_mobius(g)
            .or_else(|| identify_bicycle(g))
            .or_else(|| self.fan_matches(g, true).into_iter().next())
    }

    /// Every family spec isomorphic to `g` with its vertex map, in
    /// priority order Möbius, bicycle, fan families.
    pub fn all_matches(&mut self, g: &Graph) -> Vec<(FamilySpec, Vec<Vertex>)> {
        let mut out: Vec<_> = identify_mobius(g).into_iter().collect();
        out.extend(identify_bicycle(g));
        out.extend(self.fan_matches(g, false));
        out
    }

    fn fan_matches(&mut self, g: &Graph, first_only: bool) -> Vec<(FamilySpec, Vec<Vertex>)> {
        let n = g.n();
        if n < 6 {
            return Vec::new();
        }
        let candidates = self.fan_cache.entry(n).or_insert_with(|| fan_candidates(n));
        let hash = wl_hash(g);
        let mut hits = candidates
            .iter()
            .filter(|c| c.hash == hash && c.graph.m() == g.m())
            .filter_map(|c| find_isomorphism(g, &c.graph).map(|f| (c.spec.clone(), f)));
        if first_only {
            hits.next().into_iter().collect()
        } else {
            hits.collect()
        }
    }
}

/// Convenience wrapper with a throwaway cache.
pub fn classify(g: &Graph) -> Result<Classification, ClassifyError> {
    Classifier::new().classify(g)
}

fn identify_mobius(g: &Graph) -> Option<(FamilySpec, Vec<Vertex>)> {
    let n = g.n();
    if n < 6 || n % 2 == 1 || g.m() != 3 * n / 2 || g.vertices().any(|v| g.degree(v) != 3) {
        return None;
    }
    let k = n / 2;
    let target = gen_mobius(k).ok()?.graph;
    find_isomorphism(g, &target).map(|f| (FamilySpec::Mobius { k }, f))
}

/// Every H1/H2 spec on `n` vertices (and the `K_{3,3}` chain when `n = 6`),
/// in a fixed order.
fn fan_candidates(n: usize) -> Vec<Candidate> {
    let mut specs = Vec::new();
    if n == 6 {
        specs.extend(
            TriangleEdge::subsets()
                .into_iter()
                .map(|extra_edges| FamilySpec::K33Chain { extra_edges }),
        );
    }
    let total = n - 3;
    for second in [false, true] {
        for p in 1..=total - 2 {
            for q in 1..=total - p - 1 {
                let r = total - p - q;
                for deleted in TriangleEdge::subsets() {
                    specs.push(if second {
                        FamilySpec::H2 { p, q, r, deleted }
                    } else {
                        FamilySpec::H1 { p, q, r, deleted }
                    });
                }
            }
        }
    }
    specs
        .into_iter()
        .map(|spec| {
            let graph = spec.generate().expect("valid fan spec").graph;
            Candidate {
                hash: wl_hash(&graph),
                spec,
                graph,
            }
        })
        .collect()
}

/// Structural recognition of spoke-deleted bicycle wheels: an edge whose
/// removal (with both ends) leaves a chordless spanning cycle on the other
/// `n - 2` vertices, each of which is joined to at least one of the two
/// ends. Among all such readings the lexicographically smallest spoke
/// pattern is reported, so the answer does not depend on input labels.
fn identify_bicycle(g: &Graph) -> Option<(FamilySpec, Vec<Vertex>)> {
    let n = g.n();
    if n < 5 {
        return None;
    }
    let mut best: Option<(Vec<u8>, Vec<Vertex>)> = None;
    for hub_edge in g.edges() {
        let Some(rim) = rim_cycle(g, hub_edge) else {
            continue;
        };
        for (hs, ht) in [(hub_edge.u, hub_edge.v), (hub_edge.v, hub_edge.u)] {
            let len = rim.len();
            for start in 0..len {
                for forward in [true, false] {
                    let order: Vec<Vertex> = (0..len)
                        .map(|d| {
                            let idx = if forward { start + d } else { start + len - d };
                            rim[idx % len]
                        })
                        .collect();
                    let states: Vec<u8> = order
                        .iter()
                        .map(|&v| match (g.has_edge(v, hs), g.has_edge(v, ht)) {
                            (true, true) => 0,
                            (true, false) => 1,
                            (false, true) => 2,
                            (false, false) => 3,
                        })
                        .collect();
                    if best.as_ref().is_some_and(|(b, _)| states >= *b) {
                        continue;
                    }
                    // input vertex -> family vertex
                    let mut iso = vec![0; n];
                    for (i, &v) in order.iter().enumerate() {
                        iso[v - 1] = i + 1;
                    }
                    iso[hs - 1] = n;
                    iso[ht - 1] = n - 1;
                    best = Some((states, iso));
                }
            }
        }
    }
    let (states, iso) = best?;
    let spec = FamilySpec::Bicycle {
        n,
        removed_s: (1..=n - 2).filter(|&i| matches!(states[i - 1], 2 | 3)).collect(),
        removed_t: (1..=n - 2).filter(|&i| matches!(states[i - 1], 1 | 3)).collect(),
    };
    let family = gen_bicycle(&spec, false).ok()?.graph;
    let preserved = g.m() == family.m()
        && g.edges().all(|e| family.has_edge(iso[e.u - 1], iso[e.v - 1]));
    preserved.then_some((spec, iso))
}

/// The rim cycle left after deleting both ends of `hub_edge`, in cyclic
/// order, if it is one chordless cycle through all remaining vertices.
fn rim_cycle(g: &Graph, hub_edge: Edge) -> Option<Vec<Vertex>> {
    let (a, b) = (hub_edge.u, hub_edge.v);
    let n = g.n();
    let inner = |v: Vertex| g.neighbors(v).iter().copied().filter(move |&w| w != a && w != b);
    let start = g.vertices().find(|&v| v != a && v != b)?;
    if g.vertices().any(|v| v != a && v != b && inner(v).count() != 2) {
        return None;
    }
    let mut order = vec![start];
    let mut prev = 0;
    let mut cur = start;
    loop {
        let next = inner(cur).find(|&w| w != prev)?;
        if next == start {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
        if order.len() > n {
            return None;
        }
    }
    (order.len() == n - 2).then_some(order)
}
