use std::collections::BTreeMap;
use unitri_hopf::unitriangular::{build_census, canonical_superclass_rep, CensusStore, UniMatrix, DEFAULT_BUDGET};

#[test]
fn class_counts_at_two() {
    let counts: Vec<_> = (1..=6)
        .map(|n| {
            let c = build_census(n, 2, DEFAULT_BUDGET).unwrap();
            (c.class_count(), c.superclass_count())
        })
        .collect();
    assert_eq!(counts, vec![(1, 1), (2, 2), (5, 5), (16, 15), (61, 52), (275, 203)]);
}

#[test]
fn class_counts_at_three() {
    let k: Vec<_> = (1..=5).map(|n| build_census(n, 3, DEFAULT_BUDGET).unwrap().class_count()).collect();
    // 2t^3+7t^2+6t+1 at t = 2 gives 57.
    assert_eq!(k[3], 57);
    assert_eq!(&k[..3], &[1, 3, 11]);
}

#[test]
fn largest_default_censuses_fit() {
    for (n, p) in [(4, 5), (4, 7)] {
        let c = build_census(n, p, DEFAULT_BUDGET).unwrap();
        assert!(c.classes_refine_superclasses());
    }
    assert!(build_census(5, 5, DEFAULT_BUDGET).is_err());
}

/// The canonical representative is constant on superclasses and separates
/// them, on every element of the group.
fn canonical_matches_bfs(n: usize, p: u32) {
    let c = build_census(n, p, DEFAULT_BUDGET).unwrap();
    let canon = c.canonical_indices();
    let mut seen: BTreeMap<u32, u32> = BTreeMap::new();
    let mut reps = std::collections::BTreeSet::new();
    for (i, &sc) in c.superclass_ids().iter().enumerate() {
        assert_eq!(*seen.entry(sc).or_insert(canon[i]), canon[i]);
        reps.insert(canon[i]);
    }
    assert_eq!(reps.len(), c.superclass_count());
    // The dense routine and the matrix-level routine agree.
    for i in (0..c.element_count() as u32).step_by(97) {
        let u = c.element(i);
        assert_eq!(canonical_superclass_rep(&u).census_index() as u32, canon[i as usize]);
    }
}

#[test]
fn canonical_representatives_exhaustive() {
    for (n, p) in [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (4, 3), (5, 2)] {
        canonical_matches_bfs(n, p);
    }
}

#[test]
fn store_memoizes() {
    let store = CensusStore::in_memory(DEFAULT_BUDGET);
    let a = store.get(4, 2).unwrap();
    let b = store.get(4, 2).unwrap();
    assert!(std::sync::Arc::ptr_eq(&a, &b));
    let u = UniMatrix::identity(unitri_hopf::ordered::LinearOrder::new(vec![3, 0, 2, 1]).unwrap(), 2).unwrap();
    assert_eq!(a.class_of(&u).unwrap(), 0);
}
