//! Bundled model files, loader errors and the command-line contract.

use std::path::PathBuf;
use std::process::Command;

use courant_cli::{load_file, load_str, write_model, LoadError};
use courant_core::standard::*;
use courant_core::{CartanModel, CurvatureMode};

fn model_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models").join(format!("{name}.model"))
}

fn courant(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_courant")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn same_model(a: &CartanModel, b: &CartanModel) {
    assert_eq!(a.algebra(), b.algebra());
    assert!(a.subalgebra().span().same_as(b.subalgebra().span()));
    assert_eq!(a.vars(), b.vars());
    assert_eq!(a.transversal(), b.transversal());
    assert_eq!(a.gauge(), b.gauge());
    assert_eq!(a.curvature(), b.curvature());
    assert_eq!(a.mode(), b.mode());
}

#[test]
fn bundled_files_match_builtin_fixtures() {
    let pairs = [
        ("flat-abelian", flat_abelian()),
        ("d8-hyperbolic", d8_example()),
        ("sl2-borel", sl2_borel()),
        ("sl3-borel", sl3_borel()),
        ("gl2-double", gl2_double()),
        ("skew-kappa", skew_kappa_d8()),
        ("non-bianchi", non_bianchi_d8()),
    ];
    for (name, fixture) in pairs {
        let loaded = load_file(&model_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(loaded.name, name);
        same_model(&loaded.model, &fixture);
        assert_eq!(loaded.is_valid(), name != "non-bianchi", "{name}");
    }
}

#[test]
fn sl2_borel_file_is_coisotropic_and_graded() {
    let loaded = load_file(&model_path("sl2-borel")).unwrap();
    assert!(loaded.validation.get("coisotropic").unwrap().status.is_pass());
    assert!(loaded.grading.is_some());
    assert!(loaded.validation.records.iter().any(|r| r.name.starts_with("grading")));
    assert!(loaded.is_valid());
}

#[test]
fn d8_file_has_lagrangian_p() {
    let loaded = load_file(&model_path("d8-hyperbolic")).unwrap();
    let m = &loaded.model;
    assert_eq!(m.chart_dim(), 4);
    assert!(m.p_perp().same_as(m.subalgebra().span()));
}

#[test]
fn writer_roundtrips() {
    for m in [sl3_borel(), gl2_double(), skew_kappa_d8()] {
        let text = write_model("m", "", &m, None);
        same_model(&load_str(&text).unwrap().model, &m);
    }
}

#[test]
fn broken_jacobi_file_names_the_triple() {
    let err = load_file(&model_path("broken-jacobi")).unwrap_err();
    assert!(matches!(err, LoadError::Validation(_)));
    assert!(err.to_string().contains("triple (a, b, c)"), "{err}");
}

const SMALL: &str = r#"
name = "small"
[algebra]
basis = ["Xm", "H", "Xp"]
form = "killing"
brackets = [
  { left = "H", right = "Xp", value = { Xp = "2" } },
  { left = "H", right = "Xm", value = { Xm = -2 } },
  { left = "Xp", right = "Xm", value = { H = "1" } },
]
[subalgebra]
basis = ["H", "Xp"]
[chart]
coordinates = ["x1"]
transversal = ["Xm"]
gauge = [{ Xm = "1", H = "x1", Xp = "x1^2 - 1" }]
"#;

#[test]
fn inline_model_equals_fixture() {
    same_model(&load_str(SMALL).unwrap().model, &sl2_borel());
}

#[test]
fn loader_errors_carry_locations() {
    let err = load_str("name = \"x\"\n[algebra\n").unwrap_err();
    assert!(matches!(err, LoadError::Toml(_)));
    assert!(err.to_string().contains("line 2"), "{err}");

    let bad_poly = SMALL.replace("x1^2 - 1", "x1^2 -");
    let err = load_str(&bad_poly).unwrap_err().to_string();
    assert!(err.contains("chart.gauge[0].Xp") && err.contains("offset"), "{err}");

    let unknown = SMALL.replace("{ Xm = \"1\", H", "{ Xq = \"1\", H");
    let err = load_str(&unknown).unwrap_err().to_string();
    assert!(err.contains("unknown basis element `Xq`"), "{err}");

    let twice = SMALL.replace(
        "  { left = \"Xp\", right = \"Xm\", value = { H = \"1\" } },",
        "  { left = \"Xp\", right = \"Xm\", value = { H = \"1\" } },\n  { left = \"Xm\", right = \"Xp\", value = { H = \"-1\" } },",
    );
    let err = load_str(&twice).unwrap_err().to_string();
    assert!(err.contains("already given"), "{err}");

    let unnormalized = SMALL.replace("{ Xm = \"1\", H", "{ Xm = \"2\", H");
    let err = load_str(&unnormalized).unwrap_err().to_string();
    assert!(err.contains("not normalized"), "{err}");
}

#[test]
fn validate_exit_codes() {
    let (code, out, _) = courant(&["validate", model_path("sl3-borel").to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let (code, _, err) = courant(&["validate", model_path("broken-jacobi").to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("jacobi"), "{err}");
    let (code, out, _) = courant(&["validate", model_path("non-bianchi").to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("bianchi") && out.contains("FAIL"), "{out}");
    let (code, _, _) = courant(&["validate", "/nonexistent/file.model"]);
    assert_eq!(code, 2);
}

#[test]
fn run_exit_codes_and_json_mirror() {
    let dir = std::env::temp_dir().join(format!("courant-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let json = dir.join("flat.json");
    let (code, out, _) = courant(&[
        "run",
        model_path("flat-abelian").to_str().unwrap(),
        "--suite",
        "algebra",
        "--suite",
        "twisted",
        "--quick",
        "--seed",
        "7",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("seed: 7"));
    assert!(out.contains("H = 0"));
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(value["battery"]["seed"], 7);
    let suites = value["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 2);
    for s in suites {
        for r in s["records"].as_array().unwrap() {
            assert!(out.contains(r["name"].as_str().unwrap()));
            assert!(out.contains(r["identity"].as_str().unwrap()));
        }
    }

    let (code, out, _) = courant(&["run", model_path("sl3-borel").to_str().unwrap(), "--suite", "identities", "--quick"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAIL  jacobiator_closed_form"));

    let (code, out, _) = courant(&["run", model_path("non-bianchi").to_str().unwrap(), "--suite", "precourant", "--quick"]);
    assert_eq!(code, 2);
    assert!(out.contains("INVALID MODEL"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn corrupted_bracket_fails_precourant() {
    let (code, out, _) = courant(&[
        "run",
        model_path("d8-hyperbolic").to_str().unwrap(),
        "--suite",
        "precourant",
        "--quick",
        "--bracket",
        "drop-connection-dual",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL  metric_compatibility"));
    assert!(out.contains("witness: "));
}

#[test]
fn emit_h_files() {
    let dir = std::env::temp_dir().join(format!("courant-emit-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let read = |name: &str| -> toml::Table {
        let out = dir.join(format!("{name}.toml"));
        let (code, _, err) = courant(&["emit-h", model_path(name).to_str().unwrap(), out.to_str().unwrap()]);
        assert_eq!(code, 0, "{err}");
        std::fs::read_to_string(out).unwrap().parse().unwrap()
    };
    let flat = read("flat-abelian");
    let comps = flat["components"].as_table().unwrap();
    assert_eq!(comps.len(), 1);
    assert_eq!(comps["1,2,3,4"].as_str(), Some("0"));

    let d8 = read("d8-hyperbolic");
    assert_eq!(d8["components"].as_table().unwrap().len(), 1);

    let sl3 = read("sl3-borel");
    assert!(sl3["components"].as_table().unwrap().is_empty());

    let gl2 = read("gl2-double");
    assert_eq!(gl2["components"]["1,2,3,4"].as_str(), Some("-x1"));
    assert_eq!(gl2["closed"].as_bool(), Some(true));

    let (code, _, _) = courant(&[
        "emit-h",
        model_path("non-bianchi").to_str().unwrap(),
        dir.join("nb.toml").to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn synthetic_mode_is_reported() {
    let loaded = load_file(&model_path("skew-kappa")).unwrap();
    assert_eq!(loaded.model.mode(), CurvatureMode::Synthetic);
}
