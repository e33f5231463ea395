use std::collections::BTreeSet;

use nfree::oracle::{
    enumerate_posets, relations, relations_by_dag_closure, relations_by_scan, EnumerationSpec, Filter,
};
use nfree::{is_n_free, Poset};

#[test]
fn labeled_poset_counts() {
    let counts: Vec<usize> = (1..=6)
        .map(|n| enumerate_posets(&EnumerationSpec::new(n)).unwrap().count())
        .collect();
    assert_eq!(counts, [1, 3, 19, 219, 4231, 130023]);
}

#[test]
fn three_strategies_agree_on_five_elements() {
    let grown: Vec<u64> = relations(5).collect();
    let grown_set: BTreeSet<u64> = grown.iter().copied().collect();
    assert_eq!(grown.len(), grown_set.len());

    let scanned = relations_by_scan(5);
    assert_eq!(scanned.len(), 4231);
    assert_eq!(grown_set, scanned.into_iter().collect::<BTreeSet<_>>());
    assert_eq!(grown_set, relations_by_dag_closure(5));
}

#[test]
fn enumeration_is_deterministic_and_duplicate_free() {
    let spec = EnumerationSpec::new(4);
    let a: Vec<Poset> = enumerate_posets(&spec).unwrap().collect();
    let b: Vec<Poset> = enumerate_posets(&spec).unwrap().collect();
    assert_eq!(a, b);
    for (i, p) in a.iter().enumerate() {
        assert!(a[..i].iter().all(|q| q != p));
        assert_eq!(p.len(), 4);
    }
}

#[test]
fn filtered_enumeration() {
    let spec = EnumerationSpec::new(5);
    let free = enumerate_posets(&spec.with_filter(Filter::NFree)).unwrap();
    let mut count = 0;
    for p in free {
        assert!(is_n_free(&p));
        count += 1;
    }
    let with_n = enumerate_posets(&spec.with_filter(Filter::HasN)).unwrap().count();
    assert_eq!(count + with_n, 4231);
}
