//! Human-readable rendering of a [`RunReport`]. The JSON form is the serde
//! serialization of the same struct, so both carry the same fields.

use std::fmt::Write as _;

use courant_core::{CheckRecord, CurvatureMode, Status};

use crate::suites::{Bracket, RunReport};

fn record_line(out: &mut String, r: &CheckRecord) {
    let tag = match (&r.status, r.advisory) {
        (Status::Pass, false) => "PASS",
        (Status::Pass, true) => "pass",
        (Status::Fail(_), false) => "FAIL",
        (Status::Fail(_), true) => "warn",
        (Status::NotApplicable(_), _) => "n/a ",
    };
    let kind = if r.advisory { " (advisory)" } else { "" };
    writeln!(out, "  {tag}  {:<38} {:>6} cases{kind}", r.name, r.cases).unwrap();
    writeln!(out, "        {}", r.identity).unwrap();
    match &r.status {
        Status::Fail(w) => writeln!(out, "        witness: {w}").unwrap(),
        Status::NotApplicable(why) => writeln!(out, "        reason: {why}").unwrap(),
        Status::Pass => {}
    }
}

pub fn human(report: &RunReport) -> String {
    let mut out = String::new();
    writeln!(out, "model: {}", report.model).unwrap();
    if !report.description.is_empty() {
        writeln!(out, "  {}", report.description).unwrap();
    }
    let mode = match report.mode {
        CurvatureMode::Gauge => "gauge",
        CurvatureMode::Synthetic => "synthetic curvature",
    };
    writeln!(out, "mode: {mode}, chart dimension {}", report.chart_dim).unwrap();
    let bracket = match report.bracket {
        Bracket::Full => "full",
        Bracket::Alternative => "alternative",
        Bracket::DropConnectionDual => "drop-connection-dual (corrupted)",
    };
    writeln!(out, "bracket: {bracket}").unwrap();
    let b = &report.battery;
    writeln!(out, "seed: {}", b.seed).unwrap();
    writeln!(
        out,
        "battery: {} sections, {} triples, {} quads, {} five-tuples, {} p-valued, {} p-perp-valued",
        b.sections, b.triples, b.quads, b.five_tuples, b.p_valued, b.p_perp_valued
    )
    .unwrap();

    writeln!(out, "\n[validation]").unwrap();
    for r in &report.validation {
        record_line(&mut out, r);
    }
    for s in &report.suites {
        writeln!(out, "\n[{}]", s.suite.name()).unwrap();
        for r in &s.records {
            record_line(&mut out, r);
        }
    }
    if let Some(h) = &report.h {
        writeln!(out, "\nH components (1-based):").unwrap();
        if h.is_empty() {
            writeln!(out, "  H = 0").unwrap();
        }
        for c in h {
            let idx: Vec<String> = c.indices.iter().map(|i| i.to_string()).collect();
            writeln!(out, "  H[{}] = {}", idx.join(","), c.value).unwrap();
        }
    }
    let v = &report.verdict;
    let word = if !v.valid {
        "INVALID MODEL"
    } else if v.passed {
        "PASS"
    } else {
        "FAIL"
    };
    writeln!(
        out,
        "\nverdict: {word} ({} binding failures, {} advisory warnings)",
        v.binding_failures, v.advisory_failures
    )
    .unwrap();
    out
}

pub fn json(report: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}
