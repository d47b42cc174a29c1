mod support;

use apk::oracle::{
    cycle_spectrum, hamiltonian_connectivity_failure, hamiltonian_cycle, hamiltonian_path, validate_cycle,
    validate_hamiltonian_path, InvalidReason, OracleError,
};
use apk::Graph;
use proptest::prelude::*;
use support::{brute, graph_from_bits};

fn random_graph(min_n: usize, max_n: usize, density: f64) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(proptest::bool::weighted(density), pairs).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn spectrum_matches_naive_search(g in random_graph(3, 9, 0.45)) {
        let s = cycle_spectrum(&g, 18).unwrap();
        prop_assert_eq!(&s.lengths, &brute::spectrum(&g));
        prop_assert_eq!(s.witnesses.keys().copied().collect::<Vec<_>>(), s.lengths.iter().copied().collect::<Vec<_>>());
        for (&len, w) in &s.witnesses {
            prop_assert!(validate_cycle(&g, &w.0, Some(len)).is_ok());
        }
    }

    #[test]
    fn hamiltonian_paths_match_naive_search(g in random_graph(3, 8, 0.55)) {
        for u in 1..=g.n() {
            for v in u + 1..=g.n() {
                let found = hamiltonian_path(&g, u, v, 18).unwrap();
                prop_assert_eq!(found.is_some(), brute::has_hamiltonian_path(&g, u, v));
                if let Some(p) = found {
                    prop_assert!(validate_hamiltonian_path(&g, &p.0, u, v).is_ok());
                }
            }
        }
    }

    #[test]
    fn hamiltonian_cycle_agrees_with_spectrum(g in random_graph(3, 9, 0.5)) {
        let s = cycle_spectrum(&g, 18).unwrap();
        let c = hamiltonian_cycle(&g, 18).unwrap();
        prop_assert_eq!(c.is_some(), s.lengths.contains(&g.n()));
    }

    #[test]
    fn hamiltonian_connectivity_matches_pairwise_search(g in random_graph(4, 7, 0.7)) {
        let failure = hamiltonian_connectivity_failure(&g, 18).unwrap();
        let naive = (1..=g.n())
            .flat_map(|u| (u + 1..=g.n()).map(move |v| (u, v)))
            .find(|&(u, v)| !brute::has_hamiltonian_path(&g, u, v));
        prop_assert_eq!(failure.is_none(), naive.is_none());
    }
}

fn code(r: Result<(), InvalidReason>) -> Option<&'static str> {
    r.err().map(|e| e.code())
}

#[test]
fn validator_reasons() {
    let g = Graph::cycle(5);
    assert_eq!(code(validate_cycle(&g, &[1, 2, 3, 4, 5], Some(5))), None);
    assert_eq!(code(validate_cycle(&g, &[1, 2, 3, 4, 5, 1], Some(5))), None);
    assert_eq!(code(validate_cycle(&g, &[1, 2, 3, 4, 5], Some(4))), Some("wrong_length"));
    assert_eq!(code(validate_cycle(&g, &[1, 2, 3, 2], None)), Some("duplicate_vertex"));
    assert_eq!(code(validate_cycle(&g, &[1, 2, 4, 5], None)), Some("missing_edge"));
    assert_eq!(code(validate_cycle(&g, &[1, 2, 9], None)), Some("vertex_out_of_range"));
    assert_eq!(code(validate_cycle(&g, &[1, 2], None)), Some("too_short"));
    let p = Graph::path(4);
    assert_eq!(code(validate_hamiltonian_path(&p, &[1, 2, 3, 4], 1, 4)), None);
    assert_eq!(code(validate_hamiltonian_path(&p, &[1, 2, 3, 4], 4, 1)), Some("wrong_endpoints"));
}

#[test]
fn cap_is_enforced() {
    let g = Graph::cycle(20);
    assert_eq!(cycle_spectrum(&g, 18), Err(OracleError::CapExceeded { n: 20, cap: 18 }));
    assert!(cycle_spectrum(&g, 20).is_ok());
}

#[test]
fn known_spectra() {
    assert_eq!(cycle_spectrum(&Graph::petersen(), 18).unwrap().lengths, [5, 6, 8, 9].into());
    assert!(cycle_spectrum(&Graph::complete(7), 18).unwrap().is_pancyclic());
    assert_eq!(cycle_spectrum(&Graph::complete_bipartite(3, 4), 18).unwrap().lengths, [4, 6].into());
    assert!(cycle_spectrum(&Graph::path(6), 18).unwrap().lengths.is_empty());
}
