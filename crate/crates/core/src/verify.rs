//! Executable checks of the family theorems against the exhaustive oracle,
//! grouped into suites. Each check reports pass/fail and, on failure, the
//! offending graph so it can be written out as a counterexample.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::classify::{Classifier, Gate};
use crate::constructive::{
    b_graph_ham_cycle, bicycle_cycle, bicycle_ham_path, claimed_lengths, constructive_spectrum, mobius_cycle,
};
use crate::families::{
    bicycle_orbit_representatives, bicycle_reduction, enumerate_b_minors, gen_a_graph, gen_bicycle, gen_mobius,
    FamilySpec, LabeledInstance, TriangleEdge,
};
use crate::graph::{are_isomorphic, Edge, Graph};
use crate::oracle::{cycle_spectrum, hamiltonian_connectivity_failure, is_hamiltonian, OracleError};
use crate::planarity::{is_almost_planar, is_planar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Mobius,
    Bicycle,
    H,
    Theorems,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mobius" => Ok(Suite::Mobius),
            "bicycle" => Ok(Suite::Bicycle),
            "h" => Ok(Suite::H),
            "theorems" => Ok(Suite::Theorems),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite {s:?}; expected mobius, bicycle, h, theorems or all")),
        }
    }
}

/// Deliberate generator corruption, for checking that the suites notice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Leaves vertex 1 with a single edge in every generated instance,
    /// which destroys every Hamiltonian cycle.
    DetachVertex,
}

impl FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "detach-vertex" => Ok(Fault::DetachVertex),
            _ => Err(format!("unknown fault {s:?}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// The graph that broke the check, when there is one.
    pub counterexample: Option<Graph>,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{mark}  {:<9} {:<48} {}", self.suite, self.name, self.detail)
    }
}

/// A failed check: what went wrong and on which graph.
struct Failure {
    detail: String,
    graph: Option<Graph>,
}

fn fail(detail: impl Into<String>, graph: &Graph) -> Failure {
    Failure {
        detail: detail.into(),
        graph: Some(graph.clone()),
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure {
            detail: e.to_string(),
            graph: None,
        }
    }
}

type Outcome = Result<String, Failure>;

pub struct Verifier {
    pub max_n: usize,
    pub oracle_cap: usize,
    pub fault: Option<Fault>,
}

impl Verifier {
    pub fn new(max_n: usize, oracle_cap: usize) -> Self {
        Verifier {
            max_n,
            oracle_cap,
            fault: None,
        }
    }

    pub fn run(&self, suite: Suite) -> Vec<CheckResult> {
        let mut out = Vec::new();
        if matches!(suite, Suite::Mobius | Suite::All) {
            out.push(self.record("mobius", "spectrum matches prediction", self.mobius_spectra()));
        }
        if matches!(suite, Suite::Bicycle | Suite::All) {
            out.push(self.record("bicycle", "full wheel: 4-connected, pancyclic, Ham-connected", self.full_bicycles()));
            out.push(self.record("bicycle", "spoke-deleted minors are Hamiltonian", self.b_minor_hamiltonian()));
            out.push(self.record("bicycle", "alternating-spoke dichotomy", self.a_dichotomy()));
            out.push(self.record("bicycle", "rim contraction gives the next smaller wheel", self.reductions()));
        }
        if matches!(suite, Suite::H | Suite::All) {
            out.push(self.record("h", "pancyclic unless K3,3", self.h_graphs()));
        }
        if matches!(suite, Suite::Theorems | Suite::All) {
            let pool = self.almost_planar_pool();
            out.push(self.record("theorems", "pancyclic iff a triangle exists", self.triangle_equivalence(&pool)));
            out.push(self.record("theorems", "4-connected implies pancyclic and Ham-connected", self.four_connected(&pool)));
            out.push(self.record("theorems", "constructive spectrum equals oracle", self.builders_match(&pool)));
            out.push(self.record("theorems", "classification round-trip", self.round_trip(&pool)));
        }
        out
    }

    fn record(&self, suite: &'static str, name: &str, outcome: Outcome) -> CheckResult {
        match outcome {
            Ok(detail) => CheckResult {
                suite,
                name: name.into(),
                passed: true,
                detail,
                counterexample: None,
            },
            Err(f) => CheckResult {
                suite,
                name: name.into(),
                passed: false,
                detail: f.detail,
                counterexample: f.graph,
            },
        }
    }

    /// Generates an instance, applying the injected fault if any.
    fn instance(&self, spec: &FamilySpec) -> LabeledInstance {
        let inst = spec.generate().expect("suite specs are valid");
        match self.fault {
            Some(Fault::DetachVertex) => {
                let drop: Vec<Edge> = inst.graph.neighbors(1)[1..].iter().map(|&w| Edge::new(1, w)).collect();
                inst.without_edges(&drop).expect("edges present")
            }
            None => inst,
        }
    }

    fn mobius_spectra(&self) -> Outcome {
        let ks: Vec<usize> = (3..=self.max_n / 2).collect();
        for &k in &ks {
            let inst = self.instance(&FamilySpec::Mobius { k });
            let want = claimed_lengths(&inst).map_err(|e| fail(e.to_string(), &inst.graph))?;
            let got = cycle_spectrum(&inst.graph, self.oracle_cap)?;
            if got.lengths != want {
                return Err(fail(format!("V{}: oracle {got}, predicted {want:?}", 2 * k), &inst.graph));
            }
            if mobius_cycle(&inst, 3).is_ok() {
                return Err(fail(format!("V{}: a triangle was built", 2 * k), &inst.graph));
            }
        }
        Ok(format!("k = 3..={}", self.max_n / 2))
    }

    fn full_bicycles(&self) -> Outcome {
        for n in 5..=self.max_n {
            let inst = self.instance(&FamilySpec::full_bicycle(n));
            let g = &inst.graph;
            if !g.is_k_connected(4) {
                return Err(fail(format!("B{n} is not 4-connected"), g));
            }
            if !cycle_spectrum(g, self.oracle_cap)?.is_pancyclic() {
                return Err(fail(format!("B{n} is not pancyclic"), g));
            }
            if let Some((u, v)) = hamiltonian_connectivity_failure(g, self.oracle_cap)? {
                return Err(fail(format!("B{n}: no Hamiltonian path {u}..{v}"), g));
            }
            for len in 3..=n {
                bicycle_cycle(&inst, len).map_err(|e| fail(format!("B{n}: {e}"), g))?;
            }
            for u in 1..=n {
                for v in (1..=n).filter(|&v| v != u) {
                    bicycle_ham_path(&inst, u, v).map_err(|e| fail(format!("B{n}: {e}"), g))?;
                }
            }
        }
        Ok(format!("n = 5..={}", self.max_n))
    }

    fn b_minor_specs(&self, lo: usize) -> Vec<FamilySpec> {
        (lo..=self.max_n.min(crate::families::DEFAULT_ENUMERATION_CAP))
            .flat_map(|n| enumerate_b_minors(n, true, true).expect("n within cap"))
            .collect()
    }

    fn b_minor_hamiltonian(&self) -> Outcome {
        let specs = self.b_minor_specs(6);
        let count = specs.len();
        specs.par_iter().try_for_each(|spec| -> Result<(), Failure> {
            let inst = self.instance(spec);
            if !is_hamiltonian(&inst.graph, self.oracle_cap)? {
                return Err(fail(format!("{spec} is not Hamiltonian"), &inst.graph));
            }
            b_graph_ham_cycle(&inst).map_err(|e| fail(format!("{spec}: {e}"), &inst.graph))?;
            Ok(())
        })?;
        Ok(format!("{count} minors, n = 6..={}", self.max_n))
    }

    fn a_dichotomy(&self) -> Outcome {
        for n in 6..=self.max_n {
            let inst = self.instance(&FamilySpec::a_graph(n));
            let g = &inst.graph;
            let spectrum = cycle_spectrum(g, self.oracle_cap)?;
            if n % 2 == 0 {
                let evens: BTreeSet<usize> = (2..=n / 2).map(|t| 2 * t).collect();
                if spectrum.lengths != evens {
                    return Err(fail(format!("A{n}: spectrum {spectrum}"), g));
                }
                for extra in missing_spokes(n) {
                    let h = g.add_edge(extra).expect("spoke absent");
                    if !cycle_spectrum(&h, self.oracle_cap)?.is_pancyclic() {
                        return Err(fail(format!("A{n} + {extra} is not pancyclic"), &h));
                    }
                }
            } else if !spectrum.is_pancyclic() {
                return Err(fail(format!("A{n} is not pancyclic"), g));
            }
        }
        Ok(format!("n = 6..={}", self.max_n))
    }

    fn reductions(&self) -> Outcome {
        for n in 6..=self.max_n {
            let smaller = gen_bicycle(&FamilySpec::full_bicycle(n - 1), false)
                .expect("valid")
                .graph;
            for i in 1..=n - 2 {
                let reduced = bicycle_reduction(n, i).expect("valid index");
                if !are_isomorphic(&reduced, &smaller) {
                    return Err(fail(format!("B{n} reduced at {i} is not B{}", n - 1), &reduced));
                }
            }
        }
        Ok(format!("n = 6..={}", self.max_n))
    }

    fn h_specs(&self) -> Vec<FamilySpec> {
        let mut specs = Vec::new();
        for total in 3..=self.max_n.saturating_sub(3) {
            for p in 1..=total - 2 {
                for q in 1..=total - p - 1 {
                    let r = total - p - q;
                    for deleted in TriangleEdge::subsets() {
                        specs.push(FamilySpec::H1 {
                            p,
                            q,
                            r,
                            deleted: deleted.clone(),
                        });
                        specs.push(FamilySpec::H2 { p, q, r, deleted });
                    }
                }
            }
        }
        specs
    }

    fn h_graphs(&self) -> Outcome {
        let k33 = Graph::complete_bipartite(3, 3);
        let specs = self.h_specs();
        let checked = specs
            .par_iter()
            .map(|spec| -> Result<usize, Failure> {
                let inst = self.instance(spec);
                let g = &inst.graph;
                if !g.is_k_connected(3) || is_planar(g) {
                    return Ok(0);
                }
                let spectrum = cycle_spectrum(g, self.oracle_cap)?;
                if !spectrum.is_pancyclic() && !are_isomorphic(g, &k33) {
                    return Err(fail(format!("{spec}: spectrum {spectrum}"), g));
                }
                Ok(1)
            })
            .try_reduce(|| 0, |a, b| Ok(a + b))?;
        Ok(format!("{checked} admissible instances"))
    }

    /// Every generated 3-connected almost-planar instance up to `max_n`.
    fn almost_planar_pool(&self) -> Vec<LabeledInstance> {
        let mut specs: Vec<FamilySpec> = (3..=self.max_n / 2).map(|k| FamilySpec::Mobius { k }).collect();
        specs.extend(self.b_minor_specs(5));
        specs.extend(self.h_specs());
        specs
            .par_iter()
            .map(|s| self.instance(s))
            .filter(|inst| inst.graph.is_k_connected(3) && is_almost_planar(&inst.graph).verdict)
            .collect()
    }

    fn triangle_equivalence(&self, pool: &[LabeledInstance]) -> Outcome {
        pool.par_iter().try_for_each(|inst| -> Result<(), Failure> {
            let s = cycle_spectrum(&inst.graph, self.oracle_cap)?;
            if s.is_pancyclic() != s.lengths.contains(&3) {
                return Err(fail(format!("{}: spectrum {s}", name(inst)), &inst.graph));
            }
            Ok(())
        })?;
        Ok(format!("{} graphs", pool.len()))
    }

    fn four_connected(&self, pool: &[LabeledInstance]) -> Outcome {
        let hits = pool
            .par_iter()
            .filter(|inst| inst.graph.is_k_connected(4))
            .map(|inst| -> Result<usize, Failure> {
                let g = &inst.graph;
                if !cycle_spectrum(g, self.oracle_cap)?.is_pancyclic() {
                    return Err(fail(format!("{} is not pancyclic", name(inst)), g));
                }
                if let Some((u, v)) = hamiltonian_connectivity_failure(g, self.oracle_cap)? {
                    return Err(fail(format!("{}: no Hamiltonian path {u}..{v}", name(inst)), g));
                }
                Ok(1)
            })
            .try_reduce(|| 0, |a, b| Ok(a + b))?;
        Ok(format!("{hits} 4-connected graphs"))
    }

    fn builders_match(&self, pool: &[LabeledInstance]) -> Outcome {
        pool.par_iter().try_for_each(|inst| -> Result<(), Failure> {
            let built = constructive_spectrum(inst).map_err(|e| fail(format!("{}: {e}", name(inst)), &inst.graph))?;
            let truth = cycle_spectrum(&inst.graph, self.oracle_cap)?;
            if built.lengths != truth.lengths {
                return Err(fail(
                    format!("{}: built {built}, oracle {truth}", name(inst)),
                    &inst.graph,
                ));
            }
            Ok(())
        })?;
        Ok(format!("{} graphs", pool.len()))
    }

    fn round_trip(&self, pool: &[LabeledInstance]) -> Outcome {
        pool.par_iter().try_for_each_init(Classifier::new, |classifier, inst| -> Result<(), Failure> {
            let g = &inst.graph;
            let c = classifier
                .classify(g)
                .map_err(|e| fail(format!("{}: {e}", name(inst)), g))?;
            let spec = match (c.gate, c.matched_spec) {
                (Gate::AlmostPlanar, Some(spec)) => spec,
                (gate, _) => return Err(fail(format!("{}: stopped at gate {gate:?}", name(inst)), g)),
            };
            let back = spec.generate().expect("matched spec is valid").graph;
            if !are_isomorphic(&back, g) {
                return Err(fail(format!("{}: matched {spec}, not isomorphic", name(inst)), g));
            }
            Ok(())
        })?;
        Ok(format!("{} graphs", pool.len()))
    }
}

fn name(inst: &LabeledInstance) -> String {
    inst.spec
        .as_ref()
        .map(ToString::to_string)
        .unwrap_or_else(|| "graph".into())
}

/// Spokes absent from `A_n`.
pub fn missing_spokes(n: usize) -> Vec<Edge> {
    let (s, t) = (n, n - 1);
    (1..=n - 2)
        .map(|i| if i % 2 == 1 { Edge::new(t, i) } else { Edge::new(s, i) })
        .collect()
}

/// Every 3-connected spoke pattern of `B_n` up to symmetry, planar or not.
pub fn three_connected_bicycle_specs(n: usize) -> Vec<FamilySpec> {
    bicycle_orbit_representatives(n, false)
        .expect("n >= 5")
        .into_iter()
        .filter(|s| gen_bicycle(s, true).is_ok_and(|i| i.graph.is_k_connected(3)))
        .collect()
}

/// Sanity anchor used by tests and the CLI: the smallest members.
pub fn small_anchors() -> Vec<(&'static str, bool)> {
    let k33 = Graph::complete_bipartite(3, 3);
    vec![
        ("V6 = K3,3", are_isomorphic(&gen_mobius(3).unwrap().graph, &k33)),
        (
            "B5 = K5",
            are_isomorphic(
                &gen_bicycle(&FamilySpec::full_bicycle(5), true).unwrap().graph,
                &Graph::complete(5),
            ),
        ),
        ("A6 = K3,3", are_isomorphic(&gen_a_graph(6).unwrap().graph, &k33)),
    ]
}
