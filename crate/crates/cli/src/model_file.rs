//! The `.model` file format: a TOML description of a quadratic Lie algebra,
//! a coisotropic subalgebra, a chart and either a normalized gauge or a
//! synthetic curvature.
//!
//! ```toml
//! name = "sl2-borel"
//!
//! [algebra]
//! basis = ["Xm", "H", "Xp"]
//! form = "killing"
//! brackets = [
//!   { left = "H", right = "Xp", value = { Xp = "2" } },
//! ]
//!
//! [subalgebra]
//! basis = ["H", "Xp"]
//!
//! [chart]
//! coordinates = ["x1"]
//! transversal = ["Xm"]
//! gauge = [{ Xm = "1", H = "x1", Xp = "x1^2 - 1" }]
//! ```
//!
//! Each bracket `[X, Y]` is listed once and `[Y, X]` is filled in by
//! antisymmetry. An explicit form is given as `form = { pairs = [...] }`
//! and completed symmetrically.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use courant_core::cartan::ModelError;
use courant_core::courant::checks;
use courant_core::exactpoly::{parse_rational, PolyError};
use courant_core::liealg::{self, validate_grading, LieError};
use courant_core::linalg::{Matrix, Vector};
use courant_core::report::Tally;
use courant_core::{
    parse_poly, CartanModel, Curvature, CurvatureMode, Grading, LieAlgebra, Rational, Report, Section, Subalgebra,
    Subspace, Vars,
};
use num_traits::Zero;
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Toml(#[from] toml::de::Error),
    #[error("{at}: unknown basis element `{name}`")]
    UnknownBasis { at: String, name: String },
    #[error("{at}: {message}")]
    Invalid { at: String, message: String },
    #[error("{at}: bad rational `{text}`: {source}")]
    Rational {
        at: String,
        text: String,
        source: PolyError,
    },
    #[error("{at}: bad polynomial `{text}`: {source}")]
    Polynomial {
        at: String,
        text: String,
        source: PolyError,
    },
    #[error("{at}: {source}")]
    Lie { at: String, source: LieError },
    #[error("model: {0}")]
    Model(#[from] ModelError),
    #[error("algebra failed validation: {}", summarize(.0))]
    Validation(Report),
}

fn summarize(report: &Report) -> String {
    report
        .failures()
        .map(|r| match &r.status {
            courant_core::Status::Fail(w) => format!("{} ({w})", r.name),
            _ => r.name.clone(),
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// A coefficient written either as a TOML integer or as a string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    fn text(&self) -> String {
        match self {
            Coeff::Int(n) => n.to_string(),
            Coeff::Text(s) => s.clone(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum VectorSpec {
    Name(String),
    Combination(BTreeMap<String, Coeff>),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum FormSpec {
    Named(String),
    Pairs { pairs: Vec<PairSpec> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairSpec {
    left: String,
    right: String,
    value: Coeff,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketSpec {
    left: String,
    right: String,
    value: BTreeMap<String, Coeff>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraSpec {
    basis: Vec<String>,
    #[serde(default)]
    brackets: Vec<BracketSpec>,
    form: FormSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubalgebraSpec {
    basis: Vec<VectorSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GradingSpec {
    degrees: BTreeMap<String, i32>,
    element: Option<BTreeMap<String, Coeff>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChartSpec {
    coordinates: Vec<String>,
    transversal: Vec<VectorSpec>,
    gauge: Vec<BTreeMap<String, Coeff>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentSpec {
    i: usize,
    j: usize,
    value: BTreeMap<String, Coeff>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurvatureSpec {
    #[serde(default)]
    components: Vec<ComponentSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelSpec {
    name: String,
    #[serde(default)]
    description: String,
    algebra: AlgebraSpec,
    subalgebra: SubalgebraSpec,
    grading: Option<GradingSpec>,
    chart: ChartSpec,
    curvature: Option<CurvatureSpec>,
}

/// A parsed model together with its validation records.
#[derive(Clone, Debug)]
pub struct LoadedModel {
    pub name: String,
    pub description: String,
    pub model: CartanModel,
    pub grading: Option<Grading>,
    /// Quadratic-algebra, coisotropy, grading and curvature preconditions.
    pub validation: Report,
}

impl LoadedModel {
    pub fn is_valid(&self) -> bool {
        self.validation.passed()
    }
}

pub fn load_file(path: &Path) -> Result<LoadedModel, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_str(&text)
}

/// Parses and validates a model. Structural problems and a failing algebra
/// are errors; a curvature violating Bianchi loads, with a failing
/// validation record.
pub fn load_str(text: &str) -> Result<LoadedModel, LoadError> {
    let spec: ModelSpec = toml::from_str(text)?;
    let algebra = build_algebra(&spec.algebra)?;
    let quadratic = algebra.validate_quadratic();
    if !quadratic.passed() {
        return Err(LoadError::Validation(quadratic));
    }
    let names = algebra.names().to_vec();
    let d = algebra.dim();

    let span: Vec<Vector> = spec
        .subalgebra
        .basis
        .iter()
        .enumerate()
        .map(|(k, v)| vector(&names, v, &format!("subalgebra.basis[{k}]")))
        .collect::<Result<_, _>>()?;
    let lie_err = |at: &str| {
        let at = at.to_string();
        move |source| LoadError::Lie { at, source }
    };
    let p = Subalgebra::new(&algebra, Subspace::new(d, span).map_err(lie_err("subalgebra.basis"))?)
        .map_err(lie_err("subalgebra.basis"))?;

    let mut validation = quadratic;
    let mut co = Tally::new("coisotropic", "p-perp is contained in p");
    co.record(liealg::check_coisotropic(&algebra, &p), || "p-perp is not contained in p".into());
    validation.push(co.finish());

    let grading = match &spec.grading {
        None => None,
        Some(g) => Some(build_grading(&names, g)?),
    };
    if let Some(g) = &grading {
        validation.extend(validate_grading(&algebra, g, &p));
    }
    if !validation.passed() {
        return Err(LoadError::Validation(validation));
    }

    let chart = &spec.chart;
    if chart.coordinates.is_empty() {
        return invalid("chart.coordinates", "at least one coordinate is required");
    }
    let vars = Vars::new(chart.coordinates.iter().cloned());
    let transversal: Vec<Vector> = chart
        .transversal
        .iter()
        .enumerate()
        .map(|(k, v)| vector(&names, v, &format!("chart.transversal[{k}]")))
        .collect::<Result<_, _>>()?;
    let gauge: Vec<Section> = chart
        .gauge
        .iter()
        .enumerate()
        .map(|(k, terms)| section(&names, &vars, terms, &format!("chart.gauge[{k}]")))
        .collect::<Result<_, _>>()?;

    let model = match &spec.curvature {
        None => CartanModel::new(algebra, p, vars, transversal, gauge)?,
        Some(cs) => {
            let n = vars.len();
            let mut kappa = Curvature::zero(n, d, &vars);
            let mut seen = Vec::new();
            for (k, comp) in cs.components.iter().enumerate() {
                let at = format!("curvature.components[{k}]");
                if comp.i == 0 || comp.j == 0 || comp.i >= comp.j || comp.j > n {
                    return invalid(&at, format!("need 1 <= i < j <= {n}, got ({}, {})", comp.i, comp.j));
                }
                if seen.contains(&(comp.i, comp.j)) {
                    return invalid(&at, format!("component ({}, {}) given twice", comp.i, comp.j));
                }
                seen.push((comp.i, comp.j));
                let value = section(&names, &vars, &comp.value, &format!("{at}.value"))?;
                kappa.set(comp.i - 1, comp.j - 1, value)?;
            }
            CartanModel::synthetic(algebra, p, vars, transversal, gauge, kappa)?
        }
    };
    validation.extend(checks::preconditions(&model));

    Ok(LoadedModel {
        name: spec.name,
        description: spec.description,
        model,
        grading,
        validation,
    })
}

fn invalid<T>(at: &str, message: impl Into<String>) -> Result<T, LoadError> {
    Err(LoadError::Invalid {
        at: at.to_string(),
        message: message.into(),
    })
}

fn index(names: &[String], name: &str, at: &str) -> Result<usize, LoadError> {
    names.iter().position(|n| n == name).ok_or_else(|| LoadError::UnknownBasis {
        at: at.to_string(),
        name: name.to_string(),
    })
}

fn rational(c: &Coeff, at: &str) -> Result<Rational, LoadError> {
    let text = c.text();
    parse_rational(&text).map_err(|source| LoadError::Rational {
        at: at.to_string(),
        text,
        source,
    })
}

fn build_algebra(spec: &AlgebraSpec) -> Result<LieAlgebra, LoadError> {
    let names = spec.basis.clone();
    let d = names.len();
    if d == 0 {
        return invalid("algebra.basis", "basis is empty");
    }
    for (k, n) in names.iter().enumerate() {
        if names[..k].contains(n) {
            return invalid("algebra.basis", format!("`{n}` listed twice"));
        }
    }

    let mut constants = Vec::new();
    let mut listed: Vec<(usize, usize)> = Vec::new();
    for (k, br) in spec.brackets.iter().enumerate() {
        let at = format!("algebra.brackets[{k}]");
        let i = index(&names, &br.left, &at)?;
        let j = index(&names, &br.right, &at)?;
        if listed.contains(&(i, j)) || listed.contains(&(j, i)) {
            return invalid(&at, format!("[{}, {}] already given", br.left, br.right));
        }
        listed.push((i, j));
        for (target, c) in &br.value {
            let t = index(&names, target, &at)?;
            constants.push((i, j, t, rational(c, &format!("{at}.value.{target}"))?));
        }
    }

    let placeholder = Matrix::identity(d);
    let lie = |source| LoadError::Lie {
        at: "algebra".into(),
        source,
    };
    let algebra = LieAlgebra::with_antisymmetric_completion(names.clone(), constants, placeholder).map_err(lie)?;
    let form = match &spec.form {
        FormSpec::Named(s) if s == "killing" => algebra.killing_form(),
        FormSpec::Named(s) => return invalid("algebra.form", format!("unknown form `{s}`, expected \"killing\" or a pairs table")),
        FormSpec::Pairs { pairs } => {
            let mut m = Matrix::zeros(d, d);
            let mut seen: Vec<(usize, usize)> = Vec::new();
            for (k, pr) in pairs.iter().enumerate() {
                let at = format!("algebra.form.pairs[{k}]");
                let i = index(&names, &pr.left, &at)?;
                let j = index(&names, &pr.right, &at)?;
                if seen.contains(&(i, j)) || seen.contains(&(j, i)) {
                    return invalid(&at, format!("B({}, {}) already given", pr.left, pr.right));
                }
                seen.push((i, j));
                let c = rational(&pr.value, &format!("{at}.value"))?;
                m[(i, j)] = c.clone();
                m[(j, i)] = c;
            }
            m
        }
    };
    Ok(algebra.with_form(form))
}

fn vector(names: &[String], spec: &VectorSpec, at: &str) -> Result<Vector, LoadError> {
    let mut v = vec![Rational::zero(); names.len()];
    match spec {
        VectorSpec::Name(n) => v[index(names, n, at)?] = Rational::from_integer(1.into()),
        VectorSpec::Combination(terms) => {
            for (n, c) in terms {
                v[index(names, n, at)?] += rational(c, &format!("{at}.{n}"))?;
            }
        }
    }
    Ok(v)
}

fn section(names: &[String], vars: &Vars, terms: &BTreeMap<String, Coeff>, at: &str) -> Result<Section, LoadError> {
    let d = names.len();
    let mut s = Section::zero(d, vars);
    for (n, c) in terms {
        let a = index(names, n, at)?;
        let text = c.text();
        let f = parse_poly(&text, vars).map_err(|source| LoadError::Polynomial {
            at: format!("{at}.{n}"),
            text: text.clone(),
            source,
        })?;
        s = &s + &Section::basis(d, a, f);
    }
    Ok(s)
}

fn build_grading(names: &[String], spec: &GradingSpec) -> Result<Grading, LoadError> {
    let mut degrees = vec![None; names.len()];
    for (n, deg) in &spec.degrees {
        degrees[index(names, n, "grading.degrees")?] = Some(*deg);
    }
    let degrees = degrees
        .into_iter()
        .zip(names)
        .map(|(d, n)| d.ok_or_else(|| LoadError::Invalid {
            at: "grading.degrees".into(),
            message: format!("no degree for `{n}`"),
        }))
        .collect::<Result<Vec<_>, _>>()?;
    let element = match &spec.element {
        None => None,
        Some(terms) => Some(vector(names, &VectorSpec::Combination(terms.clone()), "grading.element")?),
    };
    Ok(Grading { degrees, element })
}

/// Writes a model in the `.model` format; `load_str` reads it back to an
/// equal model.
pub fn write_model(name: &str, description: &str, model: &CartanModel, grading: Option<&Grading>) -> String {
    let alg = model.algebra();
    let names = alg.names();
    let d = alg.dim();
    let q = |s: &str| toml::Value::String(s.to_string()).to_string();
    let list = |items: Vec<String>| format!("[{}]", items.join(", "));
    let vector = |v: &[Rational]| -> String {
        let nz: Vec<usize> = (0..d).filter(|&i| !v[i].is_zero()).collect();
        if nz.len() == 1 && v[nz[0]] == Rational::from_integer(1.into()) {
            return q(&names[nz[0]]);
        }
        let parts: Vec<String> = nz.iter().map(|&i| format!("{} = {}", names[i], q(&v[i].to_string()))).collect();
        format!("{{ {} }}", parts.join(", "))
    };
    let section = |s: &Section| -> String {
        let parts: Vec<String> = (0..d)
            .filter(|&i| !s.comps()[i].is_zero())
            .map(|i| format!("{} = {}", names[i], q(&s.comps()[i].to_string())))
            .collect();
        format!("{{ {} }}", parts.join(", "))
    };

    let mut out = String::new();
    writeln!(out, "name = {}", q(name)).unwrap();
    writeln!(out, "description = {}", q(description)).unwrap();
    writeln!(out, "\n[algebra]").unwrap();
    writeln!(out, "basis = {}", list(names.iter().map(|n| q(n)).collect())).unwrap();
    if *alg.form() == alg.killing_form() {
        writeln!(out, "form = \"killing\"").unwrap();
    } else {
        writeln!(out, "form = {{ pairs = [").unwrap();
        for i in 0..d {
            for j in i..d {
                let c = &alg.form()[(i, j)];
                if !c.is_zero() {
                    writeln!(out, "  {{ left = {}, right = {}, value = {} }},", q(&names[i]), q(&names[j]), q(&c.to_string()))
                        .unwrap();
                }
            }
        }
        writeln!(out, "] }}").unwrap();
    }
    let mut lines = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let br = alg.basis_bracket(i, j);
            if br.is_empty() {
                continue;
            }
            let mut v = vec![Rational::zero(); d];
            for (k, c) in br {
                v[*k] = c.clone();
            }
            let parts: Vec<String> = (0..d)
                .filter(|&k| !v[k].is_zero())
                .map(|k| format!("{} = {}", names[k], q(&v[k].to_string())))
                .collect();
            lines.push(format!(
                "  {{ left = {}, right = {}, value = {{ {} }} }},",
                q(&names[i]),
                q(&names[j]),
                parts.join(", ")
            ));
        }
    }
    if lines.is_empty() {
        writeln!(out, "brackets = []").unwrap();
    } else {
        writeln!(out, "brackets = [\n{}\n]", lines.join("\n")).unwrap();
    }

    writeln!(out, "\n[subalgebra]").unwrap();
    let p = model.subalgebra().span().basis();
    writeln!(out, "basis = {}", list(p.iter().map(|v| vector(v)).collect())).unwrap();

    if let Some(g) = grading {
        writeln!(out, "\n[grading]").unwrap();
        let degs: Vec<String> = (0..d).map(|i| format!("{} = {}", names[i], g.degrees[i])).collect();
        writeln!(out, "degrees = {{ {} }}", degs.join(", ")).unwrap();
        if let Some(e) = &g.element {
            let parts: Vec<String> = (0..d)
                .filter(|&i| !e[i].is_zero())
                .map(|i| format!("{} = {}", names[i], q(&e[i].to_string())))
                .collect();
            writeln!(out, "element = {{ {} }}", parts.join(", ")).unwrap();
        }
    }

    writeln!(out, "\n[chart]").unwrap();
    writeln!(out, "coordinates = {}", list(model.vars().names().iter().map(|n| q(n)).collect())).unwrap();
    writeln!(out, "transversal = {}", list(model.transversal().iter().map(|v| vector(v)).collect())).unwrap();
    writeln!(out, "gauge = [").unwrap();
    for a in model.gauge() {
        writeln!(out, "  {},", section(a)).unwrap();
    }
    writeln!(out, "]").unwrap();

    if model.mode() == CurvatureMode::Synthetic {
        writeln!(out, "\n[curvature]").unwrap();
        writeln!(out, "components = [").unwrap();
        for ((i, j), s) in model.curvature().components() {
            if !s.is_zero() {
                writeln!(out, "  {{ i = {}, j = {}, value = {} }},", i + 1, j + 1, section(s)).unwrap();
            }
        }
        writeln!(out, "]").unwrap();
    }
    out
}
