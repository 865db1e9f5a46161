use crate::Outcome;
use anyhow::Result;
use serde_json::json;
use std::sync::Arc;
use unitri_hopf::instances::morphisms::morphism_suite;
use unitri_hopf::unitriangular::CensusStore;

fn flag(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

pub fn run(store: &Arc<CensusStore>, p: u32, n_max: usize) -> Result<Outcome> {
    let suite = morphism_suite(store, p, n_max)?;
    let mut text = vec![format!("morphisms at p={p}, n <= {n_max}")];
    let mut entries = Vec::new();
    for e in &suite.entries {
        let r = &e.report;
        text.push(format!(
            "  {:<22} {}  violations={} injective={} bijective={}",
            r.name,
            if e.passed() { "pass" } else { "FAIL" },
            r.violation_count,
            flag(r.injective()),
            flag(r.bijective())
        ));
        text.extend(r.violations.iter().map(|v| format!("    witness: {v}")));
        entries.push(json!({
            "name": r.name,
            "passed": e.passed(),
            "violations": r.violation_count,
            "checked": r.checked,
            "injective": r.injective(),
            "bijective": r.bijective(),
            "expect_injective": e.expect_injective,
            "expect_bijective": e.expect_bijective,
            "ranks": r.ranks,
            "witnesses": r.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        }));
    }
    text.push(format!(
        "  psi.phi scaling        {}  checked={} failures={}",
        if suite.scaling_failures.is_empty() { "pass" } else { "FAIL" },
        suite.scaling_checked,
        suite.scaling_failures.len()
    ));
    for f in suite.scaling_failures.iter().take(16) {
        text.push(format!("    witness: {} expected factor {} got {}", f.element, f.expected, f.got));
    }
    let sq = &suite.square;
    text.push(format!(
        "  rel-model square       {}  checked={} failures={}",
        if sq.passed() { "pass" } else { "FAIL" },
        sq.checked,
        sq.failures.len()
    ));
    for f in sq.failures.iter().take(16) {
        text.push(format!(
            "    witness: order {} partition {}: only via graphs {:?}, only via superclasses {:?}",
            f.order, f.partition, f.only_via_graphs, f.only_via_superclasses
        ));
    }
    text.push(if suite.passed() { "result: pass".into() } else { "result: FAIL".into() });
    let json = json!({
        "p": p,
        "n_max": n_max,
        "passed": suite.passed(),
        "morphisms": entries,
        "scaling": {
            "checked": suite.scaling_checked,
            "failures": suite.scaling_failures.iter().map(|f| json!({
                "element": f.element,
                "expected": f.expected.to_string(),
                "got": f.got,
            })).collect::<Vec<_>>(),
        },
        "square": {
            "checked": sq.checked,
            "failures": sq.failures.iter().map(|f| json!({
                "order": f.order.to_string(),
                "partition": f.partition.to_string(),
                "only_via_graphs": f.only_via_graphs.iter().map(|u| format!("{u:?}")).collect::<Vec<_>>(),
                "only_via_superclasses": f.only_via_superclasses.iter().map(|u| format!("{u:?}")).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        },
    });
    Ok(Outcome { text, json, ok: suite.passed() })
}
