//! Randomised checks on posets larger than the exhaustive range.

use nfree::format::{read_poset, serialize_poset};
use nfree::oracle::{self, brute::Tables, confluence_fuzz, Suite};
use nfree::{
    a_set, grillet_closure, is_cac, is_n_free, n_diag, nd_closure, nd_diag, s_n, sequential_closure, Poset,
    Strategy, VertexId,
};
use proptest::prelude::{any, prop, prop_assert, prop_assert_eq, proptest, Just, ProptestConfig};
use proptest::strategy::Strategy as _;

/// Random poset on up to `max` elements: a random DAG over a natural
/// labelling, with the labels then shuffled.
fn poset(max: usize) -> impl proptest::strategy::Strategy<Value = Poset> {
    (0..=max)
        .prop_flat_map(|n| {
            let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            (
                proptest::collection::vec(prop::bool::weighted(0.3), n * n.saturating_sub(1) / 2),
                Just(labels).prop_shuffle(),
            )
        })
        .prop_map(|(bits, labels)| {
            let n = labels.len();
            let mut pairs = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        pairs.push((labels[i].as_str(), labels[j].as_str()));
                    }
                    k += 1;
                }
            }
            let names: Vec<&str> = labels.iter().map(String::as_str).collect();
            Poset::from_relation(&names, &pairs).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn closure_is_n_free_and_minimal_in_size(p in poset(10)) {
        let closed = grillet_closure(&p);
        prop_assert!(is_n_free(&closed));
        prop_assert!(!Tables::new(&closed).has_n());
        prop_assert_eq!(closed.len(), p.len() + n_diag(&p).len() + a_set(&p).len());
        prop_assert_eq!(grillet_closure(&closed), closed.clone());
        prop_assert_eq!(nd_closure(&p), closed);
    }

    #[test]
    fn first_pass_moves_a_set_to_diagonals(p in poset(10)) {
        let first = s_n(&p);
        prop_assert_eq!(n_diag(&first), a_set(&p));
        prop_assert!(a_set(&first).is_empty());
        prop_assert!(nd_diag(&p).is_subset(&n_diag(&p).union(&a_set(&p))));
    }

    #[test]
    fn sequential_runs_are_confluent(p in poset(9), seed in any::<u64>()) {
        let report = confluence_fuzz(&p, 4, seed);
        prop_assert!(report.pass, "{}", report);
        let run = sequential_closure(&p, &Strategy::SeededRandom(seed)).unwrap();
        prop_assert!(run.steps.iter().all(|s| p.contains(&s.edge.lower) && p.contains(&s.edge.upper)));
        prop_assert_eq!(run.steps.len(), run.result.dummy_count());
    }

    #[test]
    fn cac_matches_n_freeness(p in poset(9)) {
        prop_assert_eq!(is_cac(&p), is_n_free(&p));
    }

    #[test]
    fn duality(p in poset(9)) {
        prop_assert_eq!(p.dual().dual(), p.clone());
        prop_assert_eq!(n_diag(&p.dual()), n_diag(&p).reversed());
        prop_assert_eq!(a_set(&p.dual()), a_set(&p).reversed());
        prop_assert_eq!(nd_diag(&p.dual()), nd_diag(&p).reversed());
        let swapped = grillet_closure(&p).dual().map_ids(VertexId::swap_ends).unwrap();
        prop_assert_eq!(grillet_closure(&p.dual()), swapped);
    }

    #[test]
    fn text_format_round_trips(p in poset(8)) {
        let closed = grillet_closure(&p);
        prop_assert_eq!(read_poset(&serialize_poset(&closed)).unwrap(), closed);
    }

    #[test]
    fn every_oracle_property_holds(p in poset(8), seed in any::<u64>()) {
        for suite in [Suite::NPattern, Suite::Subdivision, Suite::Confluence] {
            let failed = oracle::check(&p, suite, seed);
            prop_assert!(failed.is_empty(), "{:?}: {:?}", failed, p);
        }
    }
}

#[test]
fn closures_of_subdivided_posets_keep_rounds_apart() {
    // s_n applied to a poset that already holds dummies still names new
    // dummies after their edge.
    let p = Poset::from_relation(&["a", "b", "c", "d"], &[("a", "c"), ("b", "c"), ("b", "d")]).unwrap();
    let full = nfree::full_subdivision(&p);
    let twice = nfree::full_subdivision(&full);
    assert_eq!(twice.len(), 4 + 3 + 6);
    assert!(is_n_free(&twice));
    assert_eq!(grillet_closure(&twice), twice);
}
