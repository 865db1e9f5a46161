use unitri_hopf::combinatorics::ArcDiagram;
use unitri_hopf::hopf::{freeness_certificate, Generators};
use unitri_hopf::instances::{
    lambda_diagram, lambda_generator, AtomicDiagrams, ConnectedMatrices, Functions, GraphAtomicMatrices,
    SuperclassFunctions,
};
use unitri_hopf::ordered::Ground;
use unitri_hopf::Result;

/// Atomic diagrams with the first one on the top ground left out.
struct MissingOne {
    inner: AtomicDiagrams,
    top: Ground,
}

impl Generators for MissingOne {
    type Key = ArcDiagram;

    fn name(&self) -> String {
        "atomic minus one".into()
    }

    fn generators(&self, ground: Ground) -> Result<Vec<ArcDiagram>> {
        let mut all = self.inner.generators(ground)?;
        if ground == self.top {
            all.remove(0);
        }
        Ok(all)
    }
}

#[test]
fn superclass_functions_are_free() {
    for p in [2, 3] {
        let n_max = if p == 2 { 4 } else { 3 };
        let h = SuperclassFunctions::new(p).unwrap();
        let r = freeness_certificate(&h, &AtomicDiagrams { p }, lambda_diagram(&h), n_max).unwrap();
        assert!(r.passed(), "{r:?}");
        for g in &r.grounds {
            assert!(g.is_isomorphism() && g.triangular && g.primitive == g.generators);
        }
    }
}

#[test]
fn removing_a_generator_leaves_a_defect() {
    let h = SuperclassFunctions::new(2).unwrap();
    let q = MissingOne { inner: AtomicDiagrams { p: 2 }, top: Ground::standard(3) };
    let r = freeness_certificate(&h, &q, lambda_diagram(&h), 3).unwrap();
    assert!(!r.passed());
    let top = r.grounds.last().unwrap();
    assert_eq!(top.defect(), 1);
    assert_eq!(top.words + 1, top.dimension);
    assert!(r.grounds[..2].iter().all(|g| g.passed()));
}

/// Connected λ_U generators are too few on three points: the words span a
/// subspace of codimension 6. Each generator image is still primitive after
/// the Eulerian projection.
#[test]
fn connected_generators_fall_short() {
    let f = Functions::new(2).unwrap();
    let r = freeness_certificate(&f, &ConnectedMatrices { p: 2 }, lambda_generator(&f), 3).unwrap();
    assert!(!r.passed());
    let defects: Vec<_> = r.grounds.iter().map(|g| (g.words, g.dimension, g.rank)).collect();
    assert_eq!(defects, vec![(1, 1, 1), (4, 4, 4), (42, 48, 42)]);
    assert!(r.grounds.iter().all(|g| g.multiplicative && g.triangular && g.primitive == g.generators));
}

#[test]
fn segment_atomic_generators_are_free() {
    let f = Functions::new(2).unwrap();
    let r = freeness_certificate(&f, &GraphAtomicMatrices { p: 2 }, lambda_generator(&f), 4).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.grounds[3].words, 1536);
}
