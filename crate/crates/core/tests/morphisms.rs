use std::collections::BTreeMap;
use std::sync::Arc;
use unitri_hopf::algebra::int;
use unitri_hopf::combinatorics::{ArcDiagram, SetPartition, SimpleGraph};
use unitri_hopf::hopf::{check_morphism, HopfExt, HopfMonoid, LinComb};
use unitri_hopf::instances::morphisms::{
    check_rel_square, constant_in_f, membership_criterion, morphism_suite, phi_graphs, phi_partitions, psi_graphs,
    scf_to_f,
};
use unitri_hopf::instances::{orders_graphs, Functions, Orders, Partitions};
use unitri_hopf::ordered::{Ground, LinearOrder};
use unitri_hopf::unitriangular::{CensusStore, UniMatrix, DEFAULT_BUDGET};

fn store() -> Arc<CensusStore> {
    Arc::new(CensusStore::in_memory(DEFAULT_BUDGET))
}

fn order(seq: &[u8]) -> LinearOrder {
    LinearOrder::new(seq.to_vec()).unwrap()
}

#[test]
fn identity_morphism_passes() {
    let r = check_morphism("id", &Partitions, &Partitions, |x| Ok(LinComb::basis(x.clone())), 4, true).unwrap();
    assert!(r.passed());
    assert_eq!(r.bijective(), Some(true));
}

#[test]
fn corrupted_map_fails_with_witness() {
    // Flip the sign of one basis element of Π on {0, 1}.
    let bad = SetPartition::single_block(Ground::standard(2));
    let r = check_morphism(
        "corrupted",
        &Partitions,
        &Partitions,
        |x| Ok(if *x == bad { LinComb::term(x.clone(), int(-1)) } else { LinComb::basis(x.clone()) }),
        3,
        false,
    )
    .unwrap();
    assert!(!r.passed());
    assert!(!r.violations.is_empty());
    assert!(r.violations.iter().any(|v| v.to_string().contains("{0,1}")));
}

#[test]
fn constant_functions_multiply() {
    let f = Functions::new(3).unwrap();
    let (l1, l2) = (order(&[2, 0]), order(&[1]));
    let prod = f.mul(&constant_in_f(&l1, 3).unwrap(), &constant_in_f(&l2, 3).unwrap()).unwrap();
    assert_eq!(prod, constant_in_f(&order(&[2, 0, 1]), 3).unwrap());
    let r = check_morphism("1", &Orders, &f, |l| constant_in_f(l, 3), 3, true).unwrap();
    assert!(r.passed());
    assert_eq!(r.injective(), Some(true));
}

#[test]
fn empty_diagram_is_the_identity() {
    let st = store();
    for p in [2, 3] {
        let o = order(&[1, 0, 2]);
        let d = ArcDiagram::singletons(o.clone(), p).unwrap();
        let id = UniMatrix::identity(o, p).unwrap();
        assert_eq!(scf_to_f(&st, &d).unwrap(), LinComb::basis(id));
    }
}

#[test]
fn phi_on_graphs() {
    let o = order(&[0, 1, 2]);
    let edgeless = SimpleGraph::edgeless(o.ground());
    let id = UniMatrix::identity(o.clone(), 3).unwrap();
    assert_eq!(phi_graphs(3, &(o.clone(), edgeless)).unwrap(), LinComb::basis(id));
    // At p = 3 each edge takes two values.
    let g = SimpleGraph::new(o.ground(), [(0, 2), (1, 2)]).unwrap();
    let image = phi_graphs(3, &(o.clone(), g.clone())).unwrap();
    assert_eq!(image.len(), 4);
    let back = image.map_linear(|u| Ok::<_, unitri_hopf::Error>(psi_graphs(u))).unwrap();
    assert_eq!(back, LinComb::term((o, g), int(4)));
}

#[test]
fn phi_psi_is_identity_over_f2() {
    let f = Functions::new(2).unwrap();
    for n in 0..=4 {
        for u in f.basis(Ground::standard(n)).unwrap() {
            let there = psi_graphs(&u);
            let back = there.map_linear(|k| phi_graphs(2, k)).unwrap();
            assert_eq!(back, LinComb::basis(u));
        }
    }
    let lg = orders_graphs();
    assert_eq!(lg.dimension(Ground::standard(4)).unwrap(), f.dimension(Ground::standard(4)).unwrap());
}

#[test]
fn phi_on_partitions() {
    let o = order(&[0, 1]);
    let x = SetPartition::single_block(o.ground());
    assert_eq!(phi_partitions(2, &(o.clone(), x.clone())).unwrap().len(), 1);
    let image = phi_partitions(3, &(o.clone(), x.clone())).unwrap();
    let labels: Vec<u8> = image.keys().map(|d| d.labels()[&(0, 1)]).collect();
    assert_eq!(labels, vec![1, 2]);
    let expect: Vec<ArcDiagram> = [1u8, 2]
        .iter()
        .map(|&a| ArcDiagram::new(o.clone(), x.clone(), BTreeMap::from([((0, 1), a)]), 3).unwrap())
        .collect();
    assert_eq!(image, LinComb::from_keys(expect));
}

#[test]
fn suite_at_two_small() {
    let s = morphism_suite(&store(), 2, 3).unwrap();
    for e in &s.entries {
        assert!(e.passed(), "{}: {:?}", e.report.name, e.report.violations);
    }
    assert!(s.scaling_failures.is_empty());
}

#[test]
fn suite_at_three_small() {
    let s = morphism_suite(&store(), 3, 3).unwrap();
    assert!(s.morphisms_passed());
    assert!(s.scaling_failures.is_empty());
    assert!(s.scaling_checked > 0);
}

/// Through n = 3 the two routes agree; the first disagreement is on four
/// points, where a superclass is not determined by which entries are
/// nonzero.
#[test]
fn rel_square_first_failure() {
    let st = store();
    assert!(check_rel_square(&st, 2, 3).unwrap().passed());
    let r = check_rel_square(&st, 2, 4).unwrap();
    assert!(!r.passed());
    let o = order(&[0, 1, 2, 3]);
    let x = SetPartition::from_blocks(&[&[0], &[1, 2], &[3]]).unwrap();
    let fail = r.failures.iter().find(|f| f.order == o && f.partition == x).expect("witness");
    let with_corner = UniMatrix::from_entries(o.clone(), 2, [(0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1)]).unwrap();
    let without = UniMatrix::from_entries(o, 2, [(0, 2, 1), (1, 2, 1), (1, 3, 1)]).unwrap();
    assert_eq!(fail.only_via_superclasses, vec![with_corner.clone()]);
    assert_eq!(fail.only_via_graphs, vec![without.clone()]);
    assert_eq!(membership_criterion(&st, &with_corner, &x).unwrap(), (true, false));
    assert_eq!(membership_criterion(&st, &without, &x).unwrap(), (false, true));
}
