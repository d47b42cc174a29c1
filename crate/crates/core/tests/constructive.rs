use std::collections::BTreeSet;
use std::time::Instant;

use apk::constructive::{
    b_graph_ham_cycle, bicycle_cycle, claimed_lengths, constructive_spectrum, cycle_of_length, mobius_cycle,
    ConstructError,
};
use apk::families::{gen_a_graph, gen_bicycle, gen_mobius, FamilySpec, TriangleEdge};
use apk::oracle::{cycle_spectrum, validate_cycle};
use apk::verify::three_connected_bicycle_specs;
use proptest::prelude::*;

fn check_against_oracle(spec: &FamilySpec) {
    let inst = spec.generate().unwrap();
    let built = constructive_spectrum(&inst).unwrap_or_else(|e| panic!("{spec}: {e}"));
    let truth = cycle_spectrum(&inst.graph, 18).unwrap();
    assert_eq!(built.lengths, truth.lengths, "{spec}");
    for (&len, w) in &built.witnesses {
        validate_cycle(&inst.graph, &w.0, Some(len)).unwrap_or_else(|e| panic!("{spec} {len}: {e}"));
    }
}

#[test]
fn mobius_up_to_sixteen_vertices() {
    for k in 3..=8 {
        check_against_oracle(&FamilySpec::Mobius { k });
    }
}

#[test]
fn every_three_connected_bicycle_pattern() {
    for n in 5..=11 {
        for spec in three_connected_bicycle_specs(n) {
            check_against_oracle(&spec);
        }
    }
}

#[test]
fn wheels_and_k33_chain() {
    for n in 4..=14 {
        check_against_oracle(&FamilySpec::Wheel { n });
    }
    for extra_edges in TriangleEdge::subsets() {
        check_against_oracle(&FamilySpec::K33Chain { extra_edges });
    }
}

#[test]
fn fan_families() {
    for (p, q, r) in [(1, 1, 1), (2, 1, 1), (1, 3, 2), (3, 3, 3), (4, 2, 3), (2, 5, 4)] {
        for deleted in TriangleEdge::subsets() {
            check_against_oracle(&FamilySpec::H1 {
                p,
                q,
                r,
                deleted: deleted.clone(),
            });
            check_against_oracle(&FamilySpec::H2 { p, q, r, deleted });
        }
    }
}

#[test]
fn unclaimed_lengths_are_refused() {
    let a = gen_a_graph(10).unwrap();
    assert_eq!(cycle_of_length(&a, 5), Err(ConstructError::NotClaimed { len: 5 }));
    let v10 = gen_mobius(5).unwrap();
    assert_eq!(claimed_lengths(&v10).unwrap(), BTreeSet::from([4, 6, 8, 10]));
    assert!(mobius_cycle(&v10, 9).is_err());
    let not_bicycle = gen_mobius(4).unwrap();
    assert!(matches!(bicycle_cycle(&not_bicycle, 4), Err(ConstructError::WrongFamily { .. })));
}

#[test]
fn large_instances_build_quickly() {
    let start = Instant::now();
    let n = 10_000;
    let b = gen_bicycle(&FamilySpec::full_bicycle(n), true).unwrap();
    let c = bicycle_cycle(&b, n).unwrap();
    validate_cycle(&b.graph, &c.0, Some(n)).unwrap();
    let a = gen_a_graph(n).unwrap();
    let h = b_graph_ham_cycle(&a).unwrap();
    validate_cycle(&a.graph, &h.0, Some(n)).unwrap();
    let v = gen_mobius(n / 2).unwrap();
    let m = mobius_cycle(&v, n - 1).unwrap();
    validate_cycle(&v.graph, &m.0, Some(n - 1)).unwrap();
    assert!(start.elapsed().as_secs() < 10, "took {:?}", start.elapsed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bicycle_lengths_at_scale(n in 12usize..400, frac in 0.0f64..1.0) {
        let inst = gen_bicycle(&FamilySpec::full_bicycle(n), true).unwrap();
        let len = 3 + ((n - 3) as f64 * frac) as usize;
        let c = bicycle_cycle(&inst, len).unwrap();
        prop_assert!(validate_cycle(&inst.graph, &c.0, Some(len)).is_ok());
    }

    #[test]
    fn mobius_lengths_at_scale(k in 3usize..300, frac in 0.0f64..1.0) {
        let inst = gen_mobius(k).unwrap();
        let claimed: Vec<usize> = claimed_lengths(&inst).unwrap().into_iter().collect();
        let len = claimed[((claimed.len() - 1) as f64 * frac) as usize];
        let c = mobius_cycle(&inst, len).unwrap();
        prop_assert!(validate_cycle(&inst.graph, &c.0, Some(len)).is_ok());
    }
}
