//! Acceptance run: one line per criterion, each made of named parts.
//!
//! Every check is exact, so there is no numeric tolerance; the only pinned
//! limits are runtimes. Some parts fail for mathematical reasons that are
//! documented in the README. They are listed in `KNOWN_FAILURES` and the test
//! asserts that exactly those parts fail, so a regression and an unexpected
//! fix are both reported.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use courant_cli::{load_file, LoadError, LoadedModel};
use courant_core::battery::DEFAULT_SEED;
use courant_core::courant::checks;
use courant_core::exactpoly::int;
use courant_core::lie2::{lie2_identities, lie2_identities_with, scaled_l3, Lie2};
use courant_core::standard::{sl2, sl3};
use courant_core::{Battery, BatteryConfig, BracketVariant, CheckRecord, Courant, Report, Section, Status};

const GAUGE_MODELS: [&str; 5] = ["flat-abelian", "d8-hyperbolic", "sl2-borel", "sl3-borel", "gl2-double"];

/// `(criterion, part)` pairs expected to fail.
const KNOWN_FAILURES: &[(u32, &str)] = &[
    (5, "sl3-borel: jacobiator_closed_form"),
    (5, "gl2-double: jacobiator_closed_form"),
    (6, "sl3-borel: curvature_pair_identity"),
    (9, "sl3-borel: l3_explicit"),
    (9, "gl2-double: l3_explicit"),
    (9, "flat-abelian: l3 vanishes on the battery"),
];

struct Part {
    label: String,
    ok: bool,
    detail: String,
}

struct Criterion {
    id: u32,
    title: &'static str,
    parts: Vec<Part>,
    elapsed: Duration,
}

struct Ctx {
    models: Vec<(String, LoadedModel, Battery)>,
    /// Every record produced, for the non-vacuity check.
    seen: Vec<(String, CheckRecord)>,
}

impl Ctx {
    fn get(&self, name: &str) -> (&LoadedModel, &Battery) {
        let (_, m, b) = self.models.iter().find(|(n, _, _)| n == name).unwrap();
        (m, b)
    }

    fn note(&mut self, model: &str, r: &Report) {
        for rec in &r.records {
            self.seen.push((model.to_string(), rec.clone()));
        }
    }
}

fn model_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models").join(format!("{name}.model"))
}

fn part(label: impl Into<String>, ok: bool, detail: impl Into<String>) -> Part {
    Part {
        label: label.into(),
        ok,
        detail: detail.into(),
    }
}

fn record_part(model: &str, r: &Report, name: &str) -> Part {
    match r.get(name) {
        None => part(format!("{model}: {name}"), false, "record missing"),
        Some(rec) => {
            let detail = match &rec.status {
                Status::Pass => format!("{} cases", rec.cases),
                Status::Fail(w) => w.clone(),
                Status::NotApplicable(w) => format!("not applicable: {w}"),
            };
            part(format!("{model}: {name}"), rec.status.is_pass() && rec.cases > 0, detail)
        }
    }
}

fn binding_parts(model: &str, r: &Report) -> Vec<Part> {
    r.records.iter().filter(|x| !x.advisory).map(|x| record_part(model, r, &x.name)).collect()
}

/// A negative control passes when the corrupted check fails with a witness.
fn detected(label: &str, p: Part) -> Part {
    let ok = !p.ok && !p.detail.is_empty() && !p.detail.starts_with("not applicable") && p.detail != "record missing";
    part(label, ok, p.detail)
}

fn timed_part(label: String, elapsed: Duration, limit: Duration) -> Part {
    part(label, elapsed < limit, format!("{:.2?} (limit {:.0?})", elapsed, limit))
}

type Mat = Vec<Vec<i64>>;

fn unit(n: usize, i: usize, j: usize) -> Mat {
    let mut m = vec![vec![0; n]; n];
    m[i][j] = 1;
    m
}

fn diff(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

fn trace_product(a: &Mat, b: &Mat) -> i64 {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|k| a[i][k] * b[k][i]).sum::<i64>()).sum()
}

fn c1_algebra(_: &mut Ctx) -> Vec<Part> {
    let start = Instant::now();
    let mut parts = Vec::new();
    let sl2_mats = vec![unit(2, 1, 0), diff(&unit(2, 0, 0), &unit(2, 1, 1)), unit(2, 0, 1)];
    let sl3_mats = vec![
        unit(3, 0, 1),
        unit(3, 1, 2),
        unit(3, 0, 2),
        diff(&unit(3, 0, 0), &unit(3, 1, 1)),
        diff(&unit(3, 1, 1), &unit(3, 2, 2)),
        unit(3, 1, 0),
        unit(3, 2, 1),
        unit(3, 2, 0),
    ];
    for (name, g, mats, n) in [("sl2", sl2(), sl2_mats, 2), ("sl3", sl3(), sl3_mats, 3)] {
        let r = g.validate_quadratic();
        parts.push(part(
            format!("{name}: validate_quadratic"),
            r.passed() && r.records.iter().all(|x| x.status.is_pass()),
            format!("{} records", r.records.len()),
        ));
        let k = g.killing_form();
        let d = g.dim();
        let mut bad = None;
        for i in 0..d {
            for j in 0..d {
                let oracle = int(2 * n * trace_product(&mats[i], &mats[j]));
                if k[(i, j)] != oracle && bad.is_none() {
                    bad = Some(format!("B({}, {}) = {} but 2n tr = {oracle}", g.names()[i], g.names()[j], k[(i, j)]));
                }
            }
        }
        parts.push(part(format!("{name}: Killing = 2n tr(XY)"), bad.is_none(), bad.unwrap_or_default()));
    }
    let g = sl2();
    let k = g.killing_form();
    parts.push(part("sl2: B(H,H) = 8, B(Xp,Xm) = 4", k[(1, 1)] == int(8) && k[(2, 0)] == int(4), ""));
    parts.push(timed_part("runtime".into(), start.elapsed(), Duration::from_secs(1)));
    parts
}

fn c2_precourant(ctx: &mut Ctx) -> Vec<Part> {
    let mut parts = Vec::new();
    for name in GAUGE_MODELS {
        let (m, b) = ctx.get(name);
        let start = Instant::now();
        let r = checks::axioms_check(&Courant::new(&m.model), b);
        let t = start.elapsed();
        parts.extend(binding_parts(name, &r));
        parts.push(timed_part(format!("{name}: runtime"), t, Duration::from_secs(30)));
        ctx.note(name, &r);
    }
    parts
}

fn c3_pontryagin(ctx: &mut Ctx) -> Vec<Part> {
    let mut parts = Vec::new();
    for name in GAUGE_MODELS {
        let (m, b) = ctx.get(name);
        let c = Courant::new(&m.model);
        let start = Instant::now();
        let mut r = checks::pontryagin_check(&c, b);
        r.extend(checks::dp_check(&c, b));
        let t = start.elapsed();
        for rec in ["pontryagin_antisymmetry", "pontryagin_function_linearity", "dp_vanishes"] {
            parts.push(record_part(name, &r, rec));
        }
        if name == "d8-hyperbolic" {
            parts.push(timed_part(format!("{name}: runtime"), t, Duration::from_secs(300)));
        }
        ctx.note(name, &r);
    }
    parts
}

fn c4_twisted(ctx: &mut Ctx) -> Vec<Part> {
    let mut parts = Vec::new();
    for name in GAUGE_MODELS {
        let (m, b) = ctx.get(name);
        let c = Courant::new(&m.model);
        let mut r = checks::strong_criteria(&c, b);
        let (hr, h) = checks::h_check(&c, b);
        r.extend(hr);
        for rec in ["s1_jacobiator_in_p_perp", "s2_kernel_slot", "pontryagin_is_pullback", "h_closed"] {
            parts.push(record_part(name, &r, rec));
        }
        if m.model.chart_dim() == 3 {
            let secs: Vec<&Section> = b.sections.iter().map(|l| &l.section).collect();
            let nonzero = b.quads.iter().find(|q| !c.pontryagin(q.map(|i| secs[i])).is_zero());
            parts.push(part(
                format!("{name}: P = 0 on a 3-dimensional chart"),
                nonzero.is_none() && h.is_zero(),
                format!("{} quads", b.quads.len()),
            ));
        }
        ctx.note(name, &r);
    }
    parts
}

fn c5_closed_form(ctx: &mut Ctx) -> Vec<Part> {
    let mut parts = Vec::new();
    for name in GAUGE_MODELS {
        let (m, b) = ctx.get(name);
        let r = checks::jacobiator_formula_check(&Courant::new(&m.model), b);
        parts.push(record_part(name, &r, "jacobiator_closed_form"));
        ctx.note(name, &r);
    }
    parts
}

fn c6_pair_identity(ctx: &mut Ctx) -> Vec<Part> {
    let mut parts = Vec::new();
    for name in GAUGE_MODELS {
        let (m, b) = ctx.get(name);
        let r = checks::curvature_identity_check(&Courant::new(&m.model), b);
        let mut p = record_part(name, &r, "curvature_pair_identity");
        let cases = r.get("curvature_pair_identity").map_or(0, |x| x.cases);
        if cases < 50 {
            p.ok = false;
            p.detail = format!("only {cases} pairs; {}", p.detail);
        }
        parts.push(p);
        ctx.note(name, &r);
    }
    parts
}

fn c7_quotient(ctx: &mut Ctx) -> Vec<Part> {
    let mut parts = Vec::new();
    for name in GAUGE_MODELS {
        let (m, b) = ctx.get(name);
        let r = checks::quotient_algebroid_check(&Courant::new(&m.model), b);
        parts.extend(binding_parts(name, &r));
        ctx.note(name, &r);
    }
    parts
}

fn c8_skew(ctx: &mut Ctx) -> Vec<Part> {
    let name = "skew-kappa";
    let (m, b) = ctx.get(name);
    let pre = checks::preconditions(&m.model);
    let r = checks::skew_kappa_check(&m.model, b);
    let parts = vec![
        record_part(name, &pre, "bianchi"),
        record_part(name, &r, "kappa_form_skew"),
        record_part(name, &r, "alternative_jacobiator"),
    ];
    ctx.note(name, &pre);
    ctx.note(name, &r);
    parts
}

fn c9_lie2(ctx: &mut Ctx) -> Vec<Part> {
    let mut parts = Vec::new();
    for name in GAUGE_MODELS {
        let (m, b) = ctx.get(name);
        let l = Lie2::new(Courant::new(&m.model));
        let r = lie2_identities(&l, b);
        for rec in ["L1_chain_map", "L2_antisymmetry", "L3_degree0", "L3_degree1", "L4_coherence", "l3_explicit"] {
            parts.push(record_part(name, &r, rec));
        }
        if name == "flat-abelian" {
            let secs: Vec<&Section> = b.sections.iter().map(|s| &s.section).collect();
            let mut witness = None;
            for t in &b.triples {
                let v = l.l3_section(secs[t[0]], secs[t[1]], secs[t[2]]);
                if !v.is_zero() {
                    let labels: Vec<&str> = t.iter().map(|&i| b.label(i)).collect();
                    witness = Some(format!("({}): l3 = {}", labels.join(", "), m.model.show(&v)));
                    break;
                }
            }
            parts.push(part(
                format!("{name}: l3 vanishes on the battery"),
                witness.is_none(),
                witness.unwrap_or_else(|| format!("{} triples", b.triples.len())),
            ));
        }
        ctx.note(name, &r);
    }
    parts
}

fn courant_cli(args: &[&str]) -> (i32, Vec<u8>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_courant")).args(args).output().unwrap();
    (out.status.code().unwrap(), out.stdout, String::from_utf8_lossy(&out.stderr).into_owned())
}

fn c10_negative(ctx: &mut Ctx) -> Vec<Part> {
    let mut parts = Vec::new();

    let err = load_file(&model_path("broken-jacobi")).unwrap_err();
    let named = matches!(err, LoadError::Validation(_)) && err.to_string().contains("triple (a, b, c)");
    let (code, _, _) = courant_cli(&["validate", model_path("broken-jacobi").to_str().unwrap()]);
    parts.push(part("broken Jacobi constants", named && code == 2, err.to_string()));

    let (m, b) = ctx.get("d8-hyperbolic");
    let dropped = Courant::with_variant(&m.model, BracketVariant::DropConnectionDual);
    let r = checks::axioms_check(&dropped, b);
    let p = record_part("d8-hyperbolic", &r, "metric_compatibility");
    parts.push(detected("dropped bracket term", p));

    let (m, b) = ctx.get("gl2-double");
    let c = Courant::new(&m.model);
    let flipped = |e: [&Section; 4]| {
        let j = &(&c.dorfman(e[0], &c.dorfman(e[1], e[2])) + &c.dorfman(&c.dorfman(e[0], e[1]), e[2]))
            - &c.dorfman(e[1], &c.dorfman(e[0], e[2]));
        c.pairing(&j, e[3])
    };
    let r = checks::dp_check_with(&c, b, &flipped);
    let p = record_part("gl2-double", &r, "dp_vanishes");
    parts.push(detected("sign-flipped P", p));

    let (m, b) = ctx.get("d8-hyperbolic");
    let l = Lie2::new(Courant::new(&m.model));
    let doubled = scaled_l3(&l, int(2));
    let r = lie2_identities_with(&l, b, &doubled);
    let p = record_part("d8-hyperbolic", &r, "L3_degree0");
    parts.push(detected("doubled l3", p));

    let vacuous: Vec<String> = ctx
        .seen
        .iter()
        .filter(|(_, r)| r.status.is_pass() && r.cases == 0)
        .map(|(m, r)| format!("{m}: {}", r.name))
        .collect();
    parts.push(part(
        "no vacuous pass",
        vacuous.is_empty(),
        if vacuous.is_empty() {
            format!("{} records inspected", ctx.seen.len())
        } else {
            vacuous.join(", ")
        },
    ));
    parts
}

fn c11_determinism(_: &mut Ctx) -> Vec<Part> {
    let dir = std::env::temp_dir().join(format!("courant-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = model_path("gl2-double");
    let run = |json: &str, seed: &str| {
        let path = dir.join(json);
        let (_, stdout, _) = courant_cli(&[
            "run",
            file.to_str().unwrap(),
            "--suite",
            "all",
            "--seed",
            seed,
            "--json",
            path.to_str().unwrap(),
        ]);
        (stdout, std::fs::read(path).unwrap())
    };
    let (out1, json1) = run("a.json", "11");
    let (out2, json2) = run("b.json", "11");
    let (_, json3) = run("c.json", "12");
    std::fs::remove_dir_all(&dir).unwrap();
    vec![
        part("same seed, identical human report", out1 == out2, format!("{} bytes", out1.len())),
        part("same seed, identical JSON report", json1 == json2, format!("{} bytes", json1.len())),
        part("seed embedded and effective", json1 != json3 && String::from_utf8_lossy(&json1).contains("\"seed\": 11"), ""),
    ]
}

#[test]
fn acceptance() {
    let mut names: Vec<&str> = GAUGE_MODELS.to_vec();
    names.push("skew-kappa");
    let models = names
        .iter()
        .map(|n| {
            let m = load_file(&model_path(n)).unwrap_or_else(|e| panic!("{n}: {e}"));
            assert!(m.is_valid(), "{n} failed validation");
            let b = Battery::new(&m.model, BatteryConfig::with_seed(DEFAULT_SEED));
            (n.to_string(), m, b)
        })
        .collect();
    let mut ctx = Ctx {
        models,
        seen: Vec::new(),
    };

    type Runner = fn(&mut Ctx) -> Vec<Part>;
    let plan: [(u32, &str, Runner); 11] = [
        (1, "algebra validation and Killing oracle", c1_algebra),
        (2, "pre-Courant axioms", c2_precourant),
        (3, "Pontryagin tensor and DP = 0", c3_pontryagin),
        (4, "twisted-Courant certification", c4_twisted),
        (5, "closed-form Jacobiator", c5_closed_form),
        (6, "pair curvature identity on p-valued pairs", c6_pair_identity),
        (7, "quotient Lie algebroid", c7_quotient),
        (8, "skew-curvature alternative bracket", c8_skew),
        (9, "Lie 2-algebra", c9_lie2),
        (10, "negative controls", c10_negative),
        (11, "determinism", c11_determinism),
    ];
    let mut results = Vec::new();
    for (id, title, f) in plan {
        let start = Instant::now();
        let parts = f(&mut ctx);
        results.push(Criterion {
            id,
            title,
            parts,
            elapsed: start.elapsed(),
        });
    }

    let known: BTreeSet<(u32, String)> = KNOWN_FAILURES.iter().map(|(i, s)| (*i, s.to_string())).collect();
    let mut failed = BTreeSet::new();
    println!();
    for c in &results {
        let bad: Vec<&Part> = c.parts.iter().filter(|p| !p.ok).collect();
        let verdict = if bad.is_empty() { "PASS" } else { "FAIL" };
        let all_known = bad.iter().all(|p| known.contains(&(c.id, p.label.clone())));
        let note = if !bad.is_empty() && all_known { " (known)" } else { "" };
        println!(
            "criterion {:>2}  {verdict}{note}  [{:>8.2?}]  {} ({} parts)",
            c.id,
            c.elapsed,
            c.title,
            c.parts.len()
        );
        for p in c.parts.iter().filter(|p| p.ok && c.id == 10) {
            println!("      detected: {} | {}", p.label, p.detail);
        }
        for p in bad {
            println!("      failing: {} | {}", p.label, p.detail);
            failed.insert((c.id, p.label.clone()));
        }
    }

    let unexpected: Vec<_> = failed.difference(&known).collect();
    let fixed: Vec<_> = known.difference(&failed).collect();
    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:?}");
    assert!(fixed.is_empty(), "known failures now pass, update the documentation: {fixed:?}");
}
