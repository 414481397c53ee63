//! Named groups of checks and the run driver.

use clap::ValueEnum;
use courant_core::courant::checks;
use courant_core::lie2::{lie2_identities, Lie2};
use courant_core::report::{not_applicable, Tally};
use courant_core::{Battery, BatteryConfig, BracketVariant, CheckRecord, Courant, PolyForm, Report};
use serde::Serialize;

use crate::model_file::LoadedModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Precourant,
    Pontryagin,
    Twisted,
    Identities,
    Lie2,
    All,
}

impl Suite {
    pub const ORDERED: [Suite; 6] = [
        Suite::Algebra,
        Suite::Precourant,
        Suite::Pontryagin,
        Suite::Twisted,
        Suite::Identities,
        Suite::Lie2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Precourant => "precourant",
            Suite::Pontryagin => "pontryagin",
            Suite::Twisted => "twisted",
            Suite::Identities => "identities",
            Suite::Lie2 => "lie2",
            Suite::All => "all",
        }
    }

    /// Expands `all`, removes duplicates and sorts into run order.
    pub fn expand(requested: &[Suite]) -> Vec<Suite> {
        let mut out: Vec<Suite> = if requested.contains(&Suite::All) {
            Suite::ORDERED.to_vec()
        } else {
            requested.to_vec()
        };
        out.sort();
        out.dedup();
        out
    }
}

/// Which Dorfman bracket the Courant-level suites use. Anything other than
/// `full` is a deliberate corruption for negative controls or the
/// alternative bracket of the skew-curvature case.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bracket {
    #[default]
    Full,
    Alternative,
    DropConnectionDual,
}

impl Bracket {
    fn variant(self) -> BracketVariant {
        match self {
            Bracket::Full => BracketVariant::Full,
            Bracket::Alternative => BracketVariant::Alternative,
            Bracket::DropConnectionDual => BracketVariant::DropConnectionDual,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub records: Vec<CheckRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatterySummary {
    pub seed: u64,
    pub sections: usize,
    pub triples: usize,
    pub quads: usize,
    pub five_tuples: usize,
    pub p_valued: usize,
    pub p_perp_valued: usize,
}

impl BatterySummary {
    pub fn of(b: &Battery) -> Self {
        BatterySummary {
            seed: b.config.seed,
            sections: b.sections.len(),
            triples: b.triples.len(),
            quads: b.quads.len(),
            five_tuples: b.five_tuples.len(),
            p_valued: b.p_valued.len(),
            p_perp_valued: b.p_perp_valued.len(),
        }
    }
}

/// One component `H_{ijkl}` with 1-based indices.
#[derive(Clone, Debug, Serialize)]
pub struct Component {
    pub indices: Vec<usize>,
    pub value: String,
}

pub fn components(h: &PolyForm) -> Vec<Component> {
    h.components()
        .map(|(idx, f)| Component {
            indices: idx.iter().map(|i| i + 1).collect(),
            value: f.to_string(),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub valid: bool,
    pub passed: bool,
    pub binding_failures: usize,
    pub advisory_failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub model: String,
    pub description: String,
    pub mode: courant_core::CurvatureMode,
    pub chart_dim: usize,
    pub bracket: Bracket,
    pub battery: BatterySummary,
    pub validation: Vec<CheckRecord>,
    pub suites: Vec<SuiteReport>,
    /// Components of the twisting 4-form, when the twisted suite ran.
    pub h: Option<Vec<Component>>,
    pub verdict: Verdict,
}

impl RunReport {
    /// 0 when everything binding passed, 1 on a failed check, 2 when the
    /// model itself is invalid.
    pub fn exit_code(&self) -> i32 {
        if !self.verdict.valid {
            2
        } else if !self.verdict.passed {
            1
        } else {
            0
        }
    }

    pub fn records(&self) -> impl Iterator<Item = &CheckRecord> {
        self.validation.iter().chain(self.suites.iter().flat_map(|s| s.records.iter()))
    }

    pub fn record(&self, name: &str) -> Option<&CheckRecord> {
        self.records().find(|r| r.name == name)
    }
}

fn killing_relation(loaded: &LoadedModel) -> CheckRecord {
    let alg = loaded.model.algebra();
    let identity = "B = c * Killing form for some c != 0";
    let killing = alg.killing_form();
    if killing.determinant() == num_traits::Zero::zero() {
        return not_applicable("killing_multiple", identity, "Killing form is degenerate");
    }
    let mut t = Tally::new("killing_multiple", identity).advisory();
    let d = alg.dim();
    let mut ratio = None;
    for i in 0..d {
        for j in 0..d {
            let k = &killing[(i, j)];
            let b = &alg.form()[(i, j)];
            let ok = if num_traits::Zero::is_zero(k) {
                num_traits::Zero::is_zero(b)
            } else {
                let r = b / k;
                match &ratio {
                    None => {
                        ratio = Some(r);
                        true
                    }
                    Some(r0) => *r0 == r,
                }
            };
            t.record(ok, || format!("entry ({}, {}) breaks proportionality", alg.names()[i], alg.names()[j]));
        }
    }
    t.finish()
}

pub fn run_suite(
    suite: Suite,
    loaded: &LoadedModel,
    b: &Battery,
    bracket: Bracket,
    h: &mut Option<PolyForm>,
) -> Report {
    let m = &loaded.model;
    let c = Courant::with_variant(m, bracket.variant());
    let mut r = Report::new();
    match suite {
        Suite::Algebra => {
            r.push(killing_relation(loaded));
            r.extend(checks::atiyah_check(m, b));
        }
        Suite::Precourant => r.extend(checks::axioms_check(&c, b)),
        Suite::Pontryagin => {
            r.extend(checks::pontryagin_check(&c, b));
            r.extend(checks::dp_check(&c, b));
        }
        Suite::Twisted => {
            let (hr, form) = checks::h_check(&c, b);
            r.extend(hr);
            r.extend(checks::strong_criteria(&c, b));
            r.extend(checks::quotient_algebroid_check(&c, b));
            r.extend(checks::first_pontryagin_formula_check(&c, &form));
            *h = Some(form);
        }
        Suite::Identities => {
            r.extend(checks::jacobiator_formula_check(&c, b));
            r.extend(checks::curvature_identity_check(&c, b));
            r.extend(checks::skew_kappa_check(m, b));
        }
        Suite::Lie2 => r.extend(lie2_identities(&Lie2::new(c), b)),
        Suite::All => unreachable!("expanded before running"),
    }
    r
}

pub fn run(loaded: &LoadedModel, suites: &[Suite], config: BatteryConfig) -> RunReport {
    run_with(loaded, suites, config, Bracket::Full)
}

pub fn run_with(loaded: &LoadedModel, suites: &[Suite], config: BatteryConfig, bracket: Bracket) -> RunReport {
    let battery = Battery::new(&loaded.model, config);
    let mut h = None;
    let suites: Vec<SuiteReport> = Suite::expand(suites)
        .into_iter()
        .map(|s| SuiteReport {
            suite: s,
            records: run_suite(s, loaded, &battery, bracket, &mut h).records,
        })
        .collect();
    let valid = loaded.is_valid();
    let mut report = RunReport {
        model: loaded.name.clone(),
        description: loaded.description.clone(),
        mode: loaded.model.mode(),
        chart_dim: loaded.model.chart_dim(),
        bracket,
        battery: BatterySummary::of(&battery),
        validation: loaded.validation.records.clone(),
        suites,
        h: h.as_ref().map(components),
        verdict: Verdict {
            valid,
            passed: false,
            binding_failures: 0,
            advisory_failures: 0,
        },
    };
    let binding = report.records().filter(|r| !r.advisory && r.status.is_fail()).count();
    let advisory = report.records().filter(|r| r.advisory && r.status.is_fail()).count();
    report.verdict.binding_failures = binding;
    report.verdict.advisory_failures = advisory;
    report.verdict.passed = valid && binding == 0;
    report
}
