//! The subcommands: each computes its data once and renders it as JSON,
//! Markdown or CSV.

use std::fmt::Write as _;

use parfus_core::algebra::GroupoidAlgebra;
use parfus_core::blocks::{blocks, verify_blocks, wedderburn_summary};
use parfus_core::character::character_table;
use parfus_core::error::Error;
use parfus_core::foundations::verify_foundations;
use parfus_core::functors::{christmas_verify, FunctorReport, Matryoshka};
use parfus_core::fusion::{fusion_table, label_name, verify_fusion};
use parfus_core::group::{FiniteGroup, Subgroup};
use parfus_core::report::{Check, Report};
use parfus_core::simples::{verify_simples, SimpleCatalog, SimpleLabel};
use parfus_core::weak_hopf::{verify_lambda_hopf_algebroid, verify_weak_hopf};
use serde_json::{json, Value};

use crate::groupspec::{resolve_subgroups, SubgroupSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Md,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Foundations,
    Weakhopf,
    Blocks,
    Simples,
    Fusion,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Foundations => "foundations",
            Suite::Weakhopf => "weakhopf",
            Suite::Blocks => "blocks",
            Suite::Simples => "simples",
            Suite::Fusion => "fusion",
            Suite::All => "all",
        }
    }
}

/// Exit code and message for anything that stops a command.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { order, cap } => Failure::usage(format!(
                "group order {order} exceeds the subset cap {cap} (2^{} subsets); raise it with --cap {order}",
                order - 1
            )),
            Error::NonAbelian => Failure::usage("this command needs an abelian group"),
            e => Failure { code: 1, message: e.to_string() },
        }
    }
}

pub struct Ctx {
    pub spec: String,
    pub group: FiniteGroup,
    pub cap: usize,
    pub format: Format,
    pub subgroup: Option<SubgroupSpec>,
    pub suite: Suite,
}

type Out = Result<(i32, String), Failure>;

fn set_name(g: &FiniteGroup, mask: u64) -> String {
    let els: Vec<&str> = (0..g.order()).filter(|&x| mask >> x & 1 == 1).map(|x| g.name(x)).collect();
    format!("{{{}}}", els.join(","))
}

fn csv_doc(rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 fields")
}

fn md_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let esc = |s: &str| s.replace('|', "\\|");
    let mut s = format!("| {} |\n|{}\n", header.iter().map(|h| esc(h)).collect::<Vec<_>>().join(" | "), "---|".repeat(header.len()));
    for r in rows {
        let _ = writeln!(s, "| {} |", r.iter().map(|c| esc(c)).collect::<Vec<_>>().join(" | "));
    }
    s
}

fn json_doc(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json value serializes");
    s.push('\n');
    s
}

fn algebra(ctx: &Ctx) -> Result<GroupoidAlgebra, Failure> {
    Ok(GroupoidAlgebra::new(ctx.group.clone(), ctx.cap)?)
}

pub fn info(ctx: &Ctx) -> Out {
    let a = algebra(ctx)?;
    let g = a.group();
    let (dim, formula) = a.dimension();
    let props: Vec<(&str, Value)> = vec![
        ("group", json!(ctx.spec)),
        ("label", json!(g.label())),
        ("order", json!(g.order())),
        ("abelian", json!(g.is_abelian())),
        ("elements", json!(g.names())),
        ("e_subsets", json!(a.subsets().len())),
        ("orbits", json!(a.orbits().len())),
        ("dim", json!(dim)),
        ("dim_formula", json!(formula)),
    ];
    let text = |v: &Value| match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => xs.iter().map(|x| x.as_str().unwrap_or_default().to_string()).collect::<Vec<_>>().join(" "),
        v => v.to_string(),
    };
    let doc = match ctx.format {
        Format::Json => json_doc(Value::Object(props.into_iter().map(|(k, v)| (k.to_string(), v)).collect())),
        Format::Md => {
            let rows: Vec<Vec<String>> = props.iter().map(|(k, v)| vec![k.to_string(), text(v)]).collect();
            format!("# {}\n\n{}", g.label(), md_table(&["property", "value"], &rows))
        }
        Format::Csv => {
            let mut rows = vec![vec!["property".to_string(), "value".to_string()]];
            rows.extend(props.iter().map(|(k, v)| vec![k.to_string(), text(v)]));
            csv_doc(&rows)
        }
    };
    Ok((0, doc))
}

pub fn decompose(ctx: &Ctx) -> Out {
    let a = algebra(ctx)?;
    let g = a.group();
    let w = wedderburn_summary(&a)?;
    let mut rows = Vec::new();
    let mut jblocks = Vec::new();
    for b in blocks(&a) {
        let t = character_table(g, &b.isotropy)?;
        let factors: Vec<usize> = t.degrees.iter().map(|d| d * b.n).collect();
        jblocks.push(json!({"X": b.rep.mask(), "n": b.n, "isotropy_order": b.isotropy.order(), "dim": b.dim, "factors": factors}));
        let fs: Vec<String> = factors.iter().map(|f| format!("M{f}")).collect();
        rows.push(vec![set_name(g, b.rep.mask()), b.n.to_string(), b.isotropy.order().to_string(), b.dim.to_string(), fs.join(" ⊕ ")]);
    }
    let doc = match ctx.format {
        Format::Json => json_doc(json!({
            "group": ctx.spec,
            "dim": a.dimension().0,
            "blocks": jblocks,
            "wedderburn": w.sizes,
            "summary": w.to_string(),
        })),
        Format::Md => format!(
            "# Blocks of k_par {}\n\n{}\nk_par {} ≅ {}\n\n{}\n",
            g.label(),
            md_table(&["X", "n", "|G_X|", "dim", "factors"], &rows),
            g.label(),
            w,
            w.compact()
        ),
        Format::Csv => {
            let mut all = vec![["X", "n", "isotropy_order", "dim", "factors"].map(String::from).to_vec()];
            all.extend(rows);
            csv_doc(&all)
        }
    };
    Ok((0, doc))
}

fn label_json(a: &GroupoidAlgebra, cat: &SimpleCatalog, l: &SimpleLabel) -> Value {
    let t = cat.table(a, l.x);
    json!({"X": l.x.mask(), "alpha": l.alpha, "dim": l.dim, "degree": t.degrees[l.alpha], "name": label_name(a, l)})
}

pub fn simples(ctx: &Ctx) -> Out {
    let a = algebra(ctx)?;
    let g = a.group();
    let cat = SimpleCatalog::new(&a)?;
    let rows: Vec<Vec<String>> = cat
        .labels
        .iter()
        .map(|l| {
            let n = a.orbits().orbit_of(l.x).size();
            vec![label_name(&a, l), set_name(g, l.x.mask()), l.alpha.to_string(), n.to_string(), (l.dim / n).to_string(), l.dim.to_string()]
        })
        .collect();
    let doc = match ctx.format {
        Format::Json => json_doc(json!({
            "group": ctx.spec,
            "labels": cat.labels.iter().map(|l| label_json(&a, &cat, l)).collect::<Vec<_>>(),
            "sum_dim_sq": cat.sum_dim_sq(),
            "dim": a.dimension().0,
        })),
        Format::Md => format!(
            "# Simple k_par {}-modules\n\n{}\n∑ dim² = {} = dim k_par {}\n",
            g.label(),
            md_table(&["label", "X", "α", "n", "deg", "dim"], &rows),
            cat.sum_dim_sq(),
            g.label()
        ),
        Format::Csv => {
            let mut all = vec![["label", "X", "alpha", "n", "degree", "dim"].map(String::from).to_vec()];
            all.extend(rows);
            csv_doc(&all)
        }
    };
    Ok((0, doc))
}

pub fn fusion(ctx: &Ctx) -> Out {
    let a = algebra(ctx)?;
    let cat = SimpleCatalog::new(&a)?;
    let ft = fusion_table(&cat)?;
    let names: Vec<String> = ft.labels.iter().map(|l| label_name(&a, l)).collect();
    let cell = |p: usize, q: usize| {
        let parts: Vec<String> =
            ft.product(p, q).iter().map(|&(c, m)| if m == 1 { names[c].clone() } else { format!("{m}·{}", names[c]) }).collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    };
    let rows: Vec<Vec<String>> = (0..ft.len()).map(|p| std::iter::once(names[p].clone()).chain((0..ft.len()).map(|q| cell(p, q))).collect()).collect();
    let mut header = vec!["⊠".to_string()];
    header.extend(names.iter().cloned());
    let doc = match ctx.format {
        Format::Json => json_doc(json!({
            "group": ctx.spec,
            "labels": ft.labels.iter().map(|l| label_json(&a, &cat, l)).collect::<Vec<_>>(),
            "N": ft.n,
        })),
        Format::Md => {
            let h: Vec<&str> = header.iter().map(String::as_str).collect();
            format!("# Fusion rules of k_par {}\n\n{}", a.group().label(), md_table(&h, &rows))
        }
        Format::Csv => {
            let mut all = vec![header];
            all.extend(rows);
            csv_doc(&all)
        }
    };
    Ok((0, doc))
}

fn check_json(suite: &str, c: &Check) -> Value {
    let cx = c.counterexample.as_ref().map(|kv| Value::Object(kv.iter().map(|(k, v)| (k.clone(), json!(v))).collect()));
    json!({"suite": suite, "axiom": c.axiom, "status": if c.passed() { "pass" } else { "fail" }, "cases": c.cases, "counterexample": cx})
}

fn check_row(suite: &str, c: &Check) -> Vec<String> {
    let cx = c.counterexample.as_ref().map(|kv| kv.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")).unwrap_or_default();
    vec![suite.to_string(), c.axiom.clone(), if c.passed() { "pass" } else { "FAIL" }.to_string(), c.cases.to_string(), cx]
}

pub fn verify(ctx: &Ctx) -> Out {
    let a = algebra(ctx)?;
    let wanted = |s: Suite| ctx.suite == s || ctx.suite == Suite::All;
    let mut results: Vec<(&str, Report)> = Vec::new();
    if wanted(Suite::Foundations) {
        results.push(("foundations", verify_foundations(&a)));
    }
    if wanted(Suite::Weakhopf) {
        let mut r = verify_weak_hopf(&a);
        r.extend(verify_lambda_hopf_algebroid(&a, 3));
        results.push(("weakhopf", r));
    }
    if wanted(Suite::Blocks) {
        results.push(("blocks", verify_blocks(&a)));
    }
    if wanted(Suite::Simples) {
        results.push(("simples", verify_simples(&a)?));
    }
    if wanted(Suite::Fusion) {
        results.push(("fusion", verify_fusion(&a)?));
    }
    let passed = results.iter().all(|(_, r)| r.passed());
    let code = if passed { 0 } else { 1 };
    let rows: Vec<Vec<String>> = results.iter().flat_map(|(s, r)| r.checks.iter().map(|c| check_row(s, c))).collect();
    let doc = match ctx.format {
        Format::Json => json_doc(json!({
            "group": ctx.spec,
            "suite": ctx.suite.name(),
            "status": if passed { "pass" } else { "fail" },
            "checks": results.iter().flat_map(|(s, r)| r.checks.iter().map(|c| check_json(s, c))).collect::<Vec<_>>(),
        })),
        Format::Md => format!(
            "# Verification of k_par {} ({})\n\n{}\n{}\n",
            a.group().label(),
            ctx.suite.name(),
            md_table(&["suite", "axiom", "status", "cases", "counterexample"], &rows),
            if passed { "all checks pass" } else { "FAILURES present" }
        ),
        Format::Csv => {
            let mut all = vec![["suite", "axiom", "status", "cases", "counterexample"].map(String::from).to_vec()];
            all.extend(rows);
            csv_doc(&all)
        }
    };
    Ok((code, doc))
}

fn subgroups(ctx: &Ctx, cmd: &str) -> Result<Vec<Subgroup>, Failure> {
    let s = ctx.subgroup.as_ref().ok_or_else(|| Failure::usage(format!("{cmd} requires --subgroup gens:i,j or --subgroup all")))?;
    resolve_subgroups(&ctx.group, s).map_err(Failure::usage)
}

struct FunctorRun {
    subgroup: Subgroup,
    report: FunctorReport,
    targets: Vec<String>,
    extra: Option<Value>,
}

fn functor_doc(ctx: &Ctx, functor: &str, runs: &[FunctorRun]) -> Out {
    let g = &ctx.group;
    let passed = runs.iter().all(|r| r.report.passed());
    let code = if passed { 0 } else { 1 };
    let doc = match ctx.format {
        Format::Json => {
            let reports: Vec<Value> = runs
                .iter()
                .map(|r| {
                    let rep = &r.report;
                    let mut v = json!({
                        "subgroup": r.subgroup.mask(),
                        "subgroup_elements": r.subgroup.elements().iter().map(|&x| g.name(x)).collect::<Vec<_>>(),
                        "status": if rep.passed() { "pass" } else { "fail" },
                        "pairs": rep.pairs,
                        "injective": rep.injective,
                        "dims_preserved": rep.dims_preserved,
                        "label_map": rep.label_map.iter().zip(&r.targets).map(|((s, l), name)| json!({
                            "source": s, "X": l.x.mask(), "alpha": l.alpha, "dim": l.dim, "name": name,
                        })).collect::<Vec<_>>(),
                        "monoidal_failures": rep.monoidal_failures,
                        "checks": rep.checks.checks.iter().map(|c| check_json(functor, c)).collect::<Vec<_>>(),
                    });
                    if let (Some(extra), Value::Object(m)) = (&r.extra, &mut v) {
                        m.insert("phi".to_string(), extra.clone());
                    }
                    v
                })
                .collect();
            json_doc(json!({"group": ctx.spec, "functor": functor, "status": if passed { "pass" } else { "fail" }, "reports": reports}))
        }
        Format::Md => {
            let mut s = format!("# {functor} functor into k_par {}\n", g.label());
            for r in runs {
                let rep = &r.report;
                let _ = writeln!(
                    s,
                    "\n## H = {}: {}\n\ninjective: {}, dimensions preserved: {}, fusion pairs: {}, monoidal failures: {}\n",
                    set_name(g, r.subgroup.mask()),
                    if rep.passed() { "pass" } else { "FAIL" },
                    rep.injective,
                    rep.dims_preserved,
                    rep.pairs,
                    rep.monoidal_failures.len()
                );
                let rows: Vec<Vec<String>> =
                    rep.label_map.iter().zip(&r.targets).map(|((src, l), name)| vec![src.clone(), name.clone(), l.dim.to_string()]).collect();
                s.push_str(&md_table(&["source", "image", "dim"], &rows));
                for c in rep.checks.failures() {
                    let _ = writeln!(s, "\n{c}");
                }
            }
            s
        }
        Format::Csv => {
            let mut all = vec![["subgroup", "source", "image", "X", "alpha", "dim", "status"].map(String::from).to_vec()];
            for r in runs {
                for ((src, l), name) in r.report.label_map.iter().zip(&r.targets) {
                    all.push(vec![
                        set_name(g, r.subgroup.mask()),
                        src.clone(),
                        name.clone(),
                        l.x.mask().to_string(),
                        l.alpha.to_string(),
                        l.dim.to_string(),
                        if r.report.passed() { "pass" } else { "fail" }.to_string(),
                    ]);
                }
            }
            csv_doc(&all)
        }
    };
    Ok((code, doc))
}

pub fn christmas(ctx: &Ctx) -> Out {
    let hs = subgroups(ctx, "christmas")?;
    let a = algebra(ctx)?;
    let cat = SimpleCatalog::new(&a)?;
    let mut runs = Vec::new();
    for h in hs {
        let mut report = christmas_verify(&a, &cat, &h)?;
        let th = character_table(&ctx.group, &h)?;
        // sources are the irreducibles of H, named by degree
        for (s, _) in report.label_map.iter_mut() {
            let al: usize = s.parse().expect("christmas sources are indices");
            *s = format!("ρ{al} (deg {})", th.degrees[al]);
        }
        let targets = report.label_map.iter().map(|(_, l)| label_name(&a, l)).collect();
        runs.push(FunctorRun { subgroup: h, report, targets, extra: None });
    }
    functor_doc(ctx, "christmas", &runs)
}

pub fn matryoshka(ctx: &Ctx) -> Out {
    let hs = subgroups(ctx, "matryoshka")?;
    if !ctx.group.is_abelian() {
        return Err(Error::NonAbelian.into());
    }
    let mut runs = Vec::new();
    for h in hs {
        let m = Matryoshka::new(&ctx.group, &h, ctx.cap)?;
        let report = m.verify()?;
        let targets = report.label_map.iter().map(|(_, l)| label_name(&m.target, l)).collect();
        let phi: Vec<usize> = (0..ctx.group.order()).map(|x| m.phi.apply_in_parent(x)).collect();
        runs.push(FunctorRun { subgroup: h, report, targets, extra: Some(json!(phi)) });
    }
    functor_doc(ctx, "matryoshka", &runs)
}
