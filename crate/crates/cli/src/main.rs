//! `uhopf`: census, verification and counting tables for the Hopf monoids
//! of unitriangular matrices.

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use unitri_hopf::enumerative::{self, InequalityRow};
use unitri_hopf::hopf::{
    check_hopf_axioms, freeness_certificate, type_series, AxiomReport, FreeMonoid, FreenessReport, HopfExt,
    HopfMonoid, LinComb,
};
use unitri_hopf::instances::{
    self, lambda_diagram, lambda_generator, AtomicDiagrams, ClassFunctions, ConnectedMatrices, Functions,
    GraphAtomicMatrices, Graphs, Orders, Partitions, SuperclassFunctions,
};
use unitri_hopf::ordered::Ground;
use unitri_hopf::unitriangular::{CensusStore, DEFAULT_BUDGET};

mod morphisms;

#[derive(Parser, Debug)]
#[command(name = "uhopf", version, about = "Hopf monoids of (super)class functions on unitriangular groups")]
struct Cli {
    /// Directory for cached censuses.
    #[arg(long, env = "UNITRI_HOPF_CACHE", default_value = ".uq-cache", global = true)]
    cache_dir: PathBuf,
    /// Keep censuses in memory only.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Largest group order a census may enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Conjugacy classes and superclasses of U_n(F_p).
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
    },
    /// Hopf axioms for one monoid, plus optional freeness and Eulerian checks.
    Verify {
        #[arg(long, value_enum)]
        monoid: MonoidName,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        /// Fail unless the monoid is commutative.
        #[arg(long)]
        expect_commutative: bool,
        /// Fail unless the monoid is cocommutative.
        #[arg(long)]
        expect_cocommutative: bool,
        /// Run the freeness certificate (scfU, fU; always on for free-d).
        #[arg(long)]
        freeness: bool,
        /// Generators for the fU freeness certificate.
        #[arg(long, value_enum, default_value_t = FGenerators::Connected)]
        generators: FGenerators,
        /// Check that the Eulerian idempotent is a projection onto primitives.
        #[arg(long)]
        eulerian: bool,
    },
    /// The morphisms between the monoids and the commuting square.
    Morphisms {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    /// Counting tables.
    Tables {
        #[arg(long, value_enum)]
        kind: TableKind,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Size for a single conjecture fit.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = vec![2u32, 3, 5, 7])]
        primes: Vec<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MonoidName {
    #[value(name = "L")]
    L,
    #[value(name = "Pi")]
    Pi,
    #[value(name = "G")]
    G,
    #[value(name = "fU")]
    FU,
    #[value(name = "cfU")]
    CfU,
    #[value(name = "scfU")]
    ScfU,
    #[value(name = "LxPi")]
    LxPi,
    #[value(name = "LxG")]
    LxG,
    #[value(name = "free-d")]
    FreeD,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FGenerators {
    Connected,
    SegmentAtomic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Bell,
    Atomic,
    K,
    Superclasses,
    C,
    Inequality,
    Counting2,
    Fit,
    Quotient,
}

/// A finished command: what to print and whether everything passed.
struct Outcome {
    text: Vec<String>,
    json: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Table => out.text.join("\n"),
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable"),
            };
            // A closed pipe downstream is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn store(cli: &Cli) -> Arc<CensusStore> {
    Arc::new(if cli.no_cache {
        CensusStore::in_memory(cli.budget)
    } else {
        CensusStore::with_cache_dir(&cli.cache_dir, cli.budget)
    })
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Census { n, p } => census(cli, *n, *p),
        Command::Verify { monoid, p, n_max, expect_commutative, expect_cocommutative, freeness, generators, eulerian } => {
            let opts = VerifyOptions {
                p: *p,
                n_max: *n_max,
                expect_commutative: *expect_commutative,
                expect_cocommutative: *expect_cocommutative,
                freeness: *freeness,
                generators: *generators,
                eulerian: *eulerian,
            };
            verify(cli, *monoid, &opts)
        }
        Command::Morphisms { p, n_max } => morphisms::run(&store(cli), *p, *n_max),
        Command::Tables { kind, p, n_max, n, primes } => tables(cli, *kind, *p, *n_max, *n, primes),
    }
}

fn census(cli: &Cli, n: usize, p: u32) -> Result<Outcome> {
    let c = store(cli).get(n, p).with_context(|| format!("census of U_{n}(F_{p})"))?;
    Ok(Outcome {
        text: vec![format!(
            "U_{n}(F_{p}): elements: {}, classes: {}, superclasses: {}",
            c.element_count(),
            c.class_count(),
            c.superclass_count()
        )],
        json: json!({
            "n": n,
            "p": p,
            "elements": c.element_count(),
            "classes": c.class_count(),
            "superclasses": c.superclass_count(),
        }),
        ok: true,
    })
}

struct VerifyOptions {
    p: u32,
    n_max: usize,
    expect_commutative: bool,
    expect_cocommutative: bool,
    freeness: bool,
    generators: FGenerators,
    eulerian: bool,
}

/// Lines and JSON for one set of checks.
#[derive(Default)]
struct Section {
    lines: Vec<String>,
    json: serde_json::Map<String, Value>,
    ok: bool,
}

fn axiom_section(r: &AxiomReport, opts: &VerifyOptions) -> Section {
    let mut ok = r.passed();
    let mut lines = vec![format!(
        "{}: axioms to n={}: {} ({} violations); commutative={} cocommutative={}",
        r.monoid,
        r.n_max,
        if r.passed() { "pass" } else { "FAIL" },
        r.violation_count,
        r.commutative,
        r.cocommutative
    )];
    for (axiom, count) in &r.checked {
        lines.push(format!("  {axiom}: {count} instances"));
    }
    for v in &r.violations {
        lines.push(format!("  witness: {v}"));
    }
    if opts.expect_commutative && !r.commutative {
        ok = false;
        lines.push("  expected commutative: FAIL".into());
    }
    if opts.expect_cocommutative && !r.cocommutative {
        ok = false;
        lines.push("  expected cocommutative: FAIL".into());
    }
    let mut json = serde_json::Map::new();
    json.insert(
        "axioms".into(),
        json!({
            "n_max": r.n_max,
            "passed": r.passed(),
            "violations": r.violation_count,
            "checked": r.checked,
            "commutative": r.commutative,
            "cocommutative": r.cocommutative,
            "witnesses": r.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        }),
    );
    Section { lines, json, ok }
}

fn freeness_section(r: &FreenessReport) -> Section {
    let mut lines = vec![format!(
        "freeness of {} on {} to n={}: {} (total rank defect {})",
        r.monoid,
        r.generators,
        r.n_max,
        if r.passed() { "pass" } else { "FAIL" },
        r.total_defect()
    )];
    lines.extend(r.grounds.iter().map(|g| format!("  {g}")));
    let mut json = serde_json::Map::new();
    json.insert(
        "freeness".into(),
        json!({
            "generators": r.generators,
            "passed": r.passed(),
            "grounds": r.grounds.iter().map(|g| json!({
                "n": g.n,
                "words": g.words,
                "dimension": g.dimension,
                "rank": g.rank,
                "defect": g.defect(),
                "multiplicative": g.multiplicative,
                "generators": g.generators,
                "primitive": g.primitive,
                "triangular": g.triangular,
                "euler_rank": g.euler_rank,
            })).collect::<Vec<_>>(),
        }),
    );
    Section { lines, json, ok: r.passed() }
}

/// On every basis element of the top component: `e(x)` is primitive and
/// `e(e(x)) = e(x)`.
fn eulerian_section<H: HopfMonoid>(h: &H, n_max: usize) -> Result<Section> {
    let mut lines = Vec::new();
    let mut ok = true;
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let ground = Ground::standard(n);
        let (mut primitive, mut idempotent, mut total) = (0usize, 0usize, 0usize);
        for x in h.basis(ground)? {
            let e = h.euler(&LinComb::basis(x))?;
            total += 1;
            primitive += h.is_primitive(&e, ground)? as usize;
            idempotent += (h.euler(&e)? == e) as usize;
        }
        ok &= primitive == total && idempotent == total;
        lines.push(format!("  n={n}: primitive {primitive}/{total}, idempotent {idempotent}/{total}"));
        rows.push(json!({"n": n, "basis": total, "primitive": primitive, "idempotent": idempotent}));
    }
    lines.insert(0, format!("eulerian idempotent of {}: {}", h.name(), if ok { "pass" } else { "FAIL" }));
    let mut json = serde_json::Map::new();
    json.insert("eulerian".into(), json!({"passed": ok, "rows": rows}));
    Ok(Section { lines, json, ok })
}

fn merge(monoid: &str, sections: Vec<Section>) -> Outcome {
    let mut text = Vec::new();
    let mut obj = serde_json::Map::new();
    obj.insert("monoid".into(), json!(monoid));
    let mut ok = true;
    for s in sections {
        text.extend(s.lines);
        obj.extend(s.json);
        ok &= s.ok;
    }
    obj.insert("passed".into(), json!(ok));
    text.push(if ok { "result: pass".into() } else { "result: FAIL".into() });
    Outcome { text, json: Value::Object(obj), ok }
}

fn generic<H: HopfMonoid>(h: &H, opts: &VerifyOptions) -> Result<Vec<Section>> {
    let mut out = vec![axiom_section(&check_hopf_axioms(h, opts.n_max)?, opts)];
    if opts.eulerian {
        out.push(eulerian_section(h, opts.n_max)?);
    }
    Ok(out)
}

fn verify(cli: &Cli, monoid: MonoidName, opts: &VerifyOptions) -> Result<Outcome> {
    let p = opts.p;
    let name = format!("{monoid:?}");
    let sections = match monoid {
        MonoidName::L => generic(&Orders, opts)?,
        MonoidName::Pi => generic(&Partitions, opts)?,
        MonoidName::G => generic(&Graphs, opts)?,
        MonoidName::LxPi => generic(&instances::orders_partitions(), opts)?,
        MonoidName::LxG => generic(&instances::orders_graphs(), opts)?,
        MonoidName::CfU => generic(&ClassFunctions::new(p, store(cli))?, opts)?,
        MonoidName::FU => {
            let f = Functions::new(p)?;
            let mut s = generic(&f, opts)?;
            if opts.freeness {
                let r = match opts.generators {
                    FGenerators::Connected => {
                        freeness_certificate(&f, &ConnectedMatrices { p }, lambda_generator(&f), opts.n_max)?
                    }
                    FGenerators::SegmentAtomic => {
                        freeness_certificate(&f, &GraphAtomicMatrices { p }, lambda_generator(&f), opts.n_max)?
                    }
                };
                s.push(freeness_section(&r));
            }
            s
        }
        MonoidName::ScfU => {
            let h = SuperclassFunctions::new(p)?;
            let mut s = generic(&h, opts)?;
            if opts.freeness {
                let r = freeness_certificate(&h, &AtomicDiagrams { p }, lambda_diagram(&h), opts.n_max)?;
                s.push(freeness_section(&r));
            }
            s
        }
        MonoidName::FreeD => {
            let t = FreeMonoid::new(AtomicDiagrams { p })?;
            let mut s = generic(&t, opts)?;
            let h = SuperclassFunctions::new(p)?;
            let r = freeness_certificate(&h, &AtomicDiagrams { p }, lambda_diagram(&h), opts.n_max)?;
            s.push(freeness_section(&r));
            let ts = type_series(&t, opts.n_max)?;
            let th = type_series(&h, opts.n_max)?;
            let same = ts == th;
            let mut json = serde_json::Map::new();
            json.insert("type_series_match".into(), json!(same));
            s.push(Section {
                lines: vec![format!(
                    "type series of {} and {} agree to order {}: {}",
                    t.name(),
                    h.name(),
                    opts.n_max,
                    if same { "pass" } else { "FAIL" }
                )],
                json,
                ok: same,
            });
            s
        }
    };
    Ok(merge(&name, sections))
}

fn rows_json(kind: &str, p: Option<u32>, rows: Vec<Value>) -> Value {
    json!({"kind": kind, "p": p, "rows": rows})
}

fn sequence(kind: &str, p: Option<u32>, v: &[impl ToString], from: usize) -> Outcome {
    let values: Vec<String> = v.iter().skip(from).map(ToString::to_string).collect();
    let rows = values.iter().enumerate().map(|(i, x)| json!({"n": i + from, "value": x})).collect();
    let header = match p {
        Some(p) => format!("{kind} (p={p}), n={}..{}:", from, v.len().saturating_sub(1)),
        None => format!("{kind}, n={}..{}:", from, v.len().saturating_sub(1)),
    };
    Outcome { text: vec![header, values.join(",")], json: rows_json(kind, p, rows), ok: true }
}

fn inequality_rows(kind: &str, p: u32, rows: &[InequalityRow]) -> Outcome {
    let ok = rows.iter().all(InequalityRow::holds);
    let mut text = vec![format!("{kind} (p={p}): {}", if ok { "all hold" } else { "VIOLATED" })];
    text.extend(rows.iter().map(|r| {
        format!("n={}: {} {} {} (margin {})", r.n, r.lhs, if r.holds() { "≥" } else { "<" }, r.rhs, r.margin())
    }));
    let json_rows = rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "value": format!("{} ≥ {}", r.lhs, r.rhs),
                "lhs": r.lhs.to_string(),
                "rhs": r.rhs.to_string(),
                "margin": r.margin().to_string(),
                "holds": r.holds(),
            })
        })
        .collect();
    Outcome { text, json: rows_json(kind, Some(p), json_rows), ok }
}

fn fit_outcome(fits: &[enumerative::ConjectureFit], primes: &[u32]) -> Outcome {
    let mut text = Vec::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for f in fits {
        let table = f.matches_table.map_or("n/a".to_string(), |m| m.to_string());
        ok &= f.nonnegative && f.matches_table != Some(false);
        text.push(format!(
            "c_{}(q) = {}  [t = q-1; nonnegative={}; matches table={}]",
            f.n, f.poly, f.nonnegative, table
        ));
        rows.push(json!({
            "n": f.n,
            "value": f.poly.to_string(),
            "points": f.points.iter().map(|(q, c)| json!({"q": q, "c": c.to_string()})).collect::<Vec<_>>(),
            "nonnegative": f.nonnegative,
            "matches_table": f.matches_table,
        }));
    }
    let mut json = rows_json("fit", None, rows);
    json["primes"] = json!(primes);
    Outcome { text, json, ok }
}

fn tables(cli: &Cli, kind: TableKind, p: u32, n_max: usize, n: Option<usize>, primes: &[u32]) -> Result<Outcome> {
    let st = store(cli);
    Ok(match kind {
        TableKind::Bell => sequence("bell", None, &enumerative::bell_and_atomic(n_max)?.bell, 0),
        TableKind::Atomic => sequence("atomic", None, &enumerative::bell_and_atomic(n_max)?.atomic, 1),
        TableKind::K => sequence("k", Some(p), &enumerative::class_counts(&st, p, n_max)?.classes, 0),
        TableKind::Superclasses => {
            sequence("superclasses", Some(p), &enumerative::class_counts(&st, p, n_max)?.superclasses, 0)
        }
        TableKind::C => {
            let k = enumerative::class_counts(&st, p, n_max)?.classes;
            sequence("c", Some(p), &enumerative::c_sequence(&k)?, 1)
        }
        TableKind::Inequality => {
            let r = enumerative::check_inequalities(&st, p, n_max)?;
            inequality_rows("inequality", p, &r.counting)
        }
        TableKind::Counting2 => {
            let r = enumerative::check_inequalities(&st, p, n_max)?;
            inequality_rows("counting2", p, &r.counting2)
        }
        TableKind::Fit => {
            let sizes: Vec<usize> = match n {
                Some(n) => vec![n],
                None => (1..=n_max).collect(),
            };
            let fits = sizes
                .iter()
                .map(|&n| enumerative::fit_conjecture(&st, n, primes))
                .collect::<unitri_hopf::Result<Vec<_>>>()?;
            fit_outcome(&fits, primes)
        }
        TableKind::Quotient => quotients(&st, p, n_max)?,
    })
}

/// The three Lagrange quotients of type series.
fn quotients(st: &Arc<CensusStore>, p: u32, n_max: usize) -> Result<Outcome> {
    let cf = type_series(&ClassFunctions::new(p, st.clone())?, n_max)?;
    let scf = type_series(&SuperclassFunctions::new(p)?, n_max)?;
    let lp = type_series(&instances::orders_partitions(), n_max)?;
    let mut text = Vec::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for (label, num, den) in [("cf/scf", &cf, &scf), ("scf/LxPi", &scf, &lp), ("cf/LxPi", &cf, &lp)] {
        let r = enumerative::lagrange_quotient_check(num, den)?;
        ok &= r.passed();
        let coeffs: Vec<String> = r.coeffs.iter().map(ToString::to_string).collect();
        text.push(format!("{label}: {} [{}]", coeffs.join(","), if r.passed() { "nonnegative integers" } else { "VIOLATED" }));
        rows.push(json!({"n": label, "value": coeffs, "passed": r.passed()}));
    }
    Ok(Outcome { text, json: rows_json("quotient", Some(p), rows), ok })
}

