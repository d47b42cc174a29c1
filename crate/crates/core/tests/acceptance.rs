//! Acceptance criteria 1 to 10, run in order with one PASS/FAIL line each.
//! Built without the libtest harness so the table always prints; the
//! process exits non-zero if any criterion fails.

mod support;

use std::collections::BTreeSet;
use std::time::Instant;

use apk::classify::{Classifier, Gate};
use apk::constructive::{
    b_graph_ham_cycle, bicycle_ham_path, bicycle_cycle, constructive_spectrum, cycle_of_length, h1_cycle, h2_cycle,
    mobius_cycle, uncorrected,
};
use apk::families::{
    bicycle_reduction, enumerate_b_minors, gen_a_graph, gen_h1, gen_h2, gen_mobius, FamilySpec,
    LabeledInstance, TriangleEdge,
};
use apk::graph::are_isomorphic;
use apk::oracle::{
    cycle_spectrum, hamiltonian_connectivity_failure, hamiltonian_path, is_hamiltonian, validate_cycle,
    validate_hamiltonian_path, DEFAULT_ORACLE_CAP,
};
use apk::planarity::{is_almost_planar, is_planar};
use apk::verify::{missing_spokes, three_connected_bicycle_specs};
use apk::Graph;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestError, TestRunner};
use rayon::prelude::*;
use support::brute;

const CAP: usize = DEFAULT_ORACLE_CAP;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn oracle_lengths(g: &Graph) -> Result<BTreeSet<usize>, String> {
    cycle_spectrum(g, CAP).map(|s| s.lengths).map_err(|e| e.to_string())
}

fn full_range(n: usize) -> BTreeSet<usize> {
    (3..=n).collect()
}

fn evens(n: usize) -> BTreeSet<usize> {
    (4..=n).step_by(2).collect()
}

fn generate(spec: &FamilySpec) -> LabeledInstance {
    spec.generate().unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn h_specs(max_n: usize) -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    for p in 1..=max_n {
        for q in 1..=max_n {
            for r in 1..=max_n {
                if p + q + r + 3 > max_n {
                    continue;
                }
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

fn k33_chain_specs() -> Vec<FamilySpec> {
    TriangleEdge::subsets()
        .into_iter()
        .map(|extra_edges| FamilySpec::K33Chain { extra_edges })
        .collect()
}

/// Every generated non-planar family instance on at most `max_n` vertices.
fn non_planar_family_specs(max_n: usize) -> Vec<FamilySpec> {
    let mut specs: Vec<FamilySpec> = (3..=max_n / 2).map(|k| FamilySpec::Mobius { k }).collect();
    for n in 5..=max_n {
        specs.extend(enumerate_b_minors(n, true, true).expect("n within cap"));
    }
    specs.extend(k33_chain_specs());
    specs.extend(h_specs(max_n));
    specs
}

/// The 3-connected almost-planar members of the generated pool.
fn almost_planar_pool(max_n: usize) -> Vec<LabeledInstance> {
    non_planar_family_specs(max_n)
        .par_iter()
        .map(generate)
        .filter(|inst| inst.graph.is_k_connected(3) && is_almost_planar(&inst.graph).verdict)
        .collect()
}

fn criterion_1() -> Outcome {
    for k in 3..=7 {
        let g = gen_mobius(k).map_err(|e| e.to_string())?.graph;
        let mut want = evens(2 * k);
        if k % 2 == 0 {
            want.extend(k + 1..=2 * k);
        }
        let got = oracle_lengths(&g)?;
        ensure!(got == want, "V{}: oracle {got:?}, expected {want:?}", 2 * k);
        let naive = brute::spectrum(&g);
        ensure!(naive == want, "V{}: naive search {naive:?}", 2 * k);
    }
    let v8 = oracle_lengths(&gen_mobius(4).map_err(|e| e.to_string())?.graph)?;
    ensure!(v8 == BTreeSet::from([4, 5, 6, 7, 8]), "V8: {v8:?}");
    Ok("V6..V14 spectra exact, V8 = {4,5,6,7,8}".into())
}

fn criterion_2() -> Outcome {
    for n in 5..=9 {
        let inst = generate(&FamilySpec::full_bicycle(n));
        let g = &inst.graph;
        ensure!(g.is_k_connected(4), "B{n} not 4-connected");
        ensure!(oracle_lengths(g)? == full_range(n), "B{n} not pancyclic");
        let failure = hamiltonian_connectivity_failure(g, CAP).map_err(|e| e.to_string())?;
        ensure!(failure.is_none(), "B{n}: no Hamiltonian path between {failure:?}");
        for len in 3..=n {
            let c = bicycle_cycle(&inst, len).map_err(|e| format!("B{n} length {len}: {e}"))?;
            validate_cycle(g, &c.0, Some(len)).map_err(|e| format!("B{n} length {len}: {e}"))?;
        }
        for u in 1..=n {
            for v in (1..=n).filter(|&v| v != u) {
                let p = bicycle_ham_path(&inst, u, v).map_err(|e| format!("B{n} {u}..{v}: {e}"))?;
                validate_hamiltonian_path(g, &p.0, u, v).map_err(|e| format!("B{n} {u}..{v}: {e}"))?;
            }
        }
    }
    Ok("B5..B9 4-connected, pancyclic, Hamiltonian-connected; all witnesses valid".into())
}

fn criterion_3() -> Outcome {
    let mut total = 0;
    for n in 6..=10 {
        let specs = enumerate_b_minors(n, true, true).map_err(|e| e.to_string())?;
        ensure!(!specs.is_empty(), "no minors for n = {n}");
        total += specs.len();
        specs.par_iter().try_for_each(|spec| -> Result<(), String> {
            let inst = generate(spec);
            let g = &inst.graph;
            ensure!(g.is_k_connected(3) && !is_planar(g), "{spec} fails the filter");
            ensure!(is_hamiltonian(g, CAP).map_err(|e| e.to_string())?, "{spec} not Hamiltonian");
            let c = b_graph_ham_cycle(&inst).map_err(|e| format!("{spec}: {e}"))?;
            validate_cycle(g, &c.0, Some(n)).map_err(|e| format!("{spec}: {e}"))?;
            Ok(())
        })?;
    }
    Ok(format!("{total} minor classes, n = 6..10"))
}

fn criterion_4() -> Outcome {
    for n in (6..=12).step_by(2) {
        let g = gen_a_graph(n).map_err(|e| e.to_string())?.graph;
        let got = oracle_lengths(&g)?;
        ensure!(got == evens(n), "A{n}: {got:?}");
        if n <= 10 {
            ensure!(brute::spectrum(&g) == evens(n), "A{n}: naive search disagrees");
        }
        for extra in missing_spokes(n) {
            let h = g.add_edge(extra).map_err(|e| e.to_string())?;
            ensure!(oracle_lengths(&h)? == full_range(n), "A{n} + {extra} not pancyclic");
        }
    }
    for n in (7..=13).step_by(2) {
        let g = gen_a_graph(n).map_err(|e| e.to_string())?.graph;
        ensure!(oracle_lengths(&g)? == full_range(n), "A{n} not pancyclic");
    }
    Ok("even A6..A12 bipartite spectra, odd A7..A13 pancyclic, every added spoke pancyclic".into())
}

fn criterion_5() -> Outcome {
    let k33 = Graph::complete_bipartite(3, 3);
    let mut specs = Vec::new();
    for p in 1..=3 {
        for q in 1..=3 {
            for r in 1..=3 {
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
    let admissible = specs
        .par_iter()
        .map(|spec| -> Result<usize, String> {
            let inst = generate(spec);
            let g = &inst.graph;
            if !g.is_k_connected(3) || is_planar(g) {
                return Ok(0);
            }
            let lengths = oracle_lengths(g)?;
            let is_k33 = are_isomorphic(g, &k33);
            ensure!(lengths == full_range(g.n()) || is_k33, "{spec}: {lengths:?}");
            let fully_deleted = matches!(spec,
                FamilySpec::H1 { deleted, .. } | FamilySpec::H2 { deleted, .. } if deleted.len() == 3);
            if fully_deleted {
                for &len in &lengths {
                    let c = match spec {
                        FamilySpec::H1 { .. } => h1_cycle(&inst, len),
                        _ => h2_cycle(&inst, len),
                    }
                    .map_err(|e| format!("{spec} length {len}: {e}"))?;
                    validate_cycle(g, &c.0, Some(len)).map_err(|e| format!("{spec} length {len}: {e}"))?;
                }
            }
            Ok(1)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    ensure!(admissible > 0, "no admissible H graphs");
    Ok(format!("{admissible} admissible of {} H instances", specs.len()))
}

fn criterion_6() -> Outcome {
    let pool = almost_planar_pool(12);
    ensure!(!pool.is_empty(), "empty pool");
    pool.par_iter().try_for_each(|inst| -> Result<(), String> {
        let lengths = oracle_lengths(&inst.graph)?;
        let pancyclic = lengths == full_range(inst.n());
        ensure!(
            pancyclic == lengths.contains(&3),
            "{}: spectrum {lengths:?}",
            inst.spec.as_ref().expect("generated")
        );
        Ok(())
    })?;
    Ok(format!("{} graphs, zero exceptions", pool.len()))
}

fn criterion_7() -> Outcome {
    let specs = non_planar_family_specs(12);
    specs.par_iter().try_for_each(|spec| -> Result<(), String> {
        let g = generate(spec).graph;
        ensure!(is_almost_planar(&g).verdict, "{spec} not almost-planar");
        Ok(())
    })?;

    ensure!(!is_almost_planar(&Graph::complete(6)).verdict, "K6 accepted");
    let mut planar = 0;
    for n in 4..=12 {
        let wheel = generate(&FamilySpec::Wheel { n }).graph;
        ensure!(!is_almost_planar(&wheel).verdict, "W{n} accepted");
        planar += 1;
    }
    for n in 5..=10 {
        for spec in enumerate_b_minors(n, true, false).map_err(|e| e.to_string())? {
            let g = generate(&spec).graph;
            if is_planar(&g) {
                ensure!(!is_almost_planar(&g).verdict, "planar {spec} accepted");
                planar += 1;
            }
        }
    }
    let k33 = Graph::complete_bipartite(3, 3);
    let disjoint = |a: &Graph, b: &Graph| {
        let off = a.n();
        let edges = a.edges().map(|e| (e.u, e.v)).chain(b.edges().map(|e| (e.u + off, e.v + off)));
        Graph::from_edges(a.n() + b.n(), edges).expect("valid")
    };
    let disconnected = [
        disjoint(&k33, &k33),
        disjoint(&Graph::complete(5), &Graph::complete(3)),
        disjoint(&gen_mobius(4).map_err(|e| e.to_string())?.graph, &Graph::from_edges(1, []).expect("valid")),
    ];
    for g in &disconnected {
        ensure!(!is_almost_planar(g).verdict, "disconnected graph accepted: {g:?}");
    }

    let pool = almost_planar_pool(12);
    pool.par_iter().try_for_each_init(Classifier::new, |classifier, inst| -> Result<(), String> {
        let name = inst.spec.as_ref().expect("generated").to_string();
        let c = classifier.classify(&inst.graph).map_err(|e| format!("{name}: {e}"))?;
        ensure!(c.gate == Gate::AlmostPlanar, "{name}: stopped at {:?}", c.gate);
        let spec = c.matched_spec.ok_or_else(|| format!("{name}: no match"))?;
        let back = generate(&spec).graph;
        ensure!(are_isomorphic(&back, &inst.graph), "{name} matched {spec}, not isomorphic");
        Ok(())
    })?;
    Ok(format!(
        "{} family instances accepted; K6, {planar} planar and {} disconnected rejected; {} round trips",
        specs.len(),
        disconnected.len(),
        pool.len()
    ))
}

fn criterion_8() -> Outcome {
    let k33 = Graph::complete_bipartite(3, 3);
    ensure!(are_isomorphic(&gen_mobius(3).map_err(|e| e.to_string())?.graph, &k33), "V6 vs K3,3");
    ensure!(
        are_isomorphic(&generate(&FamilySpec::full_bicycle(5)).graph, &Graph::complete(5)),
        "B5 vs K5"
    );
    ensure!(are_isomorphic(&gen_a_graph(6).map_err(|e| e.to_string())?.graph, &k33), "A6 vs K3,3");
    let mut count = 0;
    for n in 6..=10 {
        let smaller = generate(&FamilySpec::full_bicycle(n - 1)).graph;
        for i in 1..=n - 2 {
            let reduced = bicycle_reduction(n, i).map_err(|e| e.to_string())?;
            ensure!(are_isomorphic(&reduced, &smaller), "B{n} reduced at {i}");
            count += 1;
        }
    }
    Ok(format!("V6, B5, A6 anchors; {count} reductions"))
}

fn criterion_9() -> Outcome {
    let mut specs: Vec<FamilySpec> = (3..=6).map(|k| FamilySpec::Mobius { k }).collect();
    for n in 5..=12 {
        specs.extend(three_connected_bicycle_specs(n));
    }
    specs.extend((4..=12).map(|n| FamilySpec::Wheel { n }));
    specs.extend(k33_chain_specs());
    specs.extend(h_specs(12));
    specs.par_iter().try_for_each(|spec| -> Result<(), String> {
        let inst = generate(spec);
        let g = &inst.graph;
        let built = constructive_spectrum(&inst).map_err(|e| format!("{spec}: {e}"))?;
        let truth = oracle_lengths(g)?;
        ensure!(built.lengths == truth, "{spec}: built {:?}, oracle {truth:?}", built.lengths);
        for (&len, w) in &built.witnesses {
            validate_cycle(g, &w.0, Some(len)).map_err(|e| format!("{spec} length {len}: {e}"))?;
        }
        Ok(())
    })?;
    Ok(format!("{} specs", specs.len()))
}

fn rejects(g: &Graph, seq: &[usize], len: usize) -> bool {
    validate_cycle(g, seq, Some(len)).is_err()
}

fn accepts(g: &Graph, seq: &[usize], len: usize) -> bool {
    validate_cycle(g, seq, Some(len)).is_ok()
}

fn has_length(g: &Graph, len: usize) -> bool {
    cycle_spectrum(g, CAP).is_ok_and(|s| s.lengths.contains(&len))
}

fn report<T: std::fmt::Debug>(what: &str, r: Result<(), TestError<T>>) -> Result<(), String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn criterion_10() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 64,
        failure_persistence: None,
        ..Config::default()
    });

    report(
        "Möbius even cycle",
        runner.run(&(3usize..=9).prop_flat_map(|k| (Just(k), 2..=k)), |(k, t)| {
            let g = gen_mobius(k).unwrap().graph;
            let inst = gen_mobius(k).unwrap();
            prop_assert!(rejects(&g, &uncorrected::mobius_even(k, t), 2 * t));
            let good = mobius_cycle(&inst, 2 * t).unwrap();
            prop_assert!(accepts(&g, &good.0, 2 * t));
            prop_assert!(has_length(&g, 2 * t));
            Ok(())
        }),
    )?;

    report(
        "Möbius longest odd cycle",
        runner.run(&(2usize..=5).prop_map(|h| 2 * h), |k| {
            let inst = gen_mobius(k).unwrap();
            let g = &inst.graph;
            prop_assert!(rejects(g, &uncorrected::mobius_longest_odd(k), 2 * k - 1));
            prop_assert!(accepts(g, &mobius_cycle(&inst, 2 * k - 1).unwrap().0, 2 * k - 1));
            prop_assert!(has_length(g, 2 * k - 1));
            Ok(())
        }),
    )?;

    let nonadjacent = (6usize..=11).prop_flat_map(|n| {
        let rim = n - 2;
        (Just(n), 1..=rim).prop_flat_map(move |(n, i)| (Just(n), Just(i), i + 2..=rim))
    });
    report(
        "bicycle non-adjacent rim path",
        runner.run(&nonadjacent.prop_filter("cyclically adjacent", |&(n, i, j)| !(i == 1 && j == n - 2)), |(n, i, j)| {
            let inst = generate(&FamilySpec::full_bicycle(n));
            let g = &inst.graph;
            let bad = uncorrected::bicycle_ham_path_nonadjacent(n, i, j);
            prop_assert!(validate_hamiltonian_path(g, &bad, i, j).is_err());
            let good = bicycle_ham_path(&inst, i, j).unwrap();
            prop_assert!(validate_hamiltonian_path(g, &good.0, i, j).is_ok());
            prop_assert!(hamiltonian_path(g, i, j, CAP).unwrap().is_some());
            Ok(())
        }),
    )?;

    report(
        "A_n Hamiltonian cycle",
        runner.run(&(3usize..=7).prop_map(|h| 2 * h), |n| {
            let g = gen_a_graph(n).unwrap().graph;
            let bad = uncorrected::edge_walk(n, &uncorrected::a_ham_edges_uncorrected(n));
            prop_assert!(rejects(&g, &bad, n));
            let good = uncorrected::edge_walk(n, &uncorrected::a_ham_edges_corrected(n));
            prop_assert!(accepts(&g, &good, n));
            prop_assert!(is_hamiltonian(&g, CAP).unwrap());
            Ok(())
        }),
    )?;

    let all = || TriangleEdge::ALL.into_iter().collect::<BTreeSet<_>>();
    report(
        "H1 (p+q+1)-cycle",
        runner.run(&(2usize..=4, 1usize..=4, 1usize..=3), |(p, q, r)| {
            let inst = gen_h1(p, q, r, all()).unwrap();
            let g = &inst.graph;
            let len = p + q + 1;
            prop_assert!(rejects(g, &uncorrected::h1_row_uncorrected(&inst, p, q), len));
            prop_assert!(accepts(g, &uncorrected::h1_row_corrected(&inst, p, q), len));
            prop_assert!(accepts(g, &cycle_of_length(&inst, len).unwrap().0, len));
            prop_assert!(has_length(g, len));
            Ok(())
        }),
    )?;

    let h2_params = (1usize..=3, 3usize..=5, 1usize..=3).prop_flat_map(|(p, q, r)| (Just((p, q, r)), 2..q));
    report(
        "H2 cycle avoiding y_1..y_j",
        runner.run(&h2_params, |((p, q, r), j)| {
            let inst = gen_h2(p, q, r, all()).unwrap();
            let g = &inst.graph;
            let len = inst.n() - j;
            prop_assert!(rejects(g, &uncorrected::h2_skip_y_uncorrected(&inst, p, q, r, j), len));
            prop_assert!(accepts(g, &uncorrected::h2_skip_y_corrected(&inst, p, q, r, j), len));
            prop_assert!(has_length(g, len));
            Ok(())
        }),
    )?;

    Ok("six printed formulas rejected, corrected forms accepted, lengths confirmed by oracle".into())
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = 0;
    for (i, check) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {i}: PASS ({detail}; {secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("criterion {i}: FAIL ({detail}; {secs:.1}s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
