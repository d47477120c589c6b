use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use filippov_core::catalog::{self, Builtin};
use filippov_core::{adjoint_rep, json, Field, Matrix};

fn filippov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_filippov"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn show(dir: &TempDir, call: &str, file: &str) -> PathBuf {
    let out = filippov(&["catalog", "show", call]);
    assert_eq!(code(&out), 0, "{call}");
    write(dir, file, &stdout(&out))
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// `{"command": str, "ok": bool, "checks": [{"name": str, "ok": bool, "witness": null | {..}}]}`
/// with `ok` the conjunction of the checks and a witness on every failed check.
fn assert_report_schema(text: &str) -> Value {
    let v: Value = serde_json::from_str(text).unwrap_or_else(|e| panic!("{e}: {text}"));
    assert!(v["command"].is_string(), "{text}");
    let checks = v["checks"].as_array().expect("checks array");
    assert!(!checks.is_empty());
    let mut all = true;
    for c in checks {
        assert!(c["name"].is_string());
        let ok = c["ok"].as_bool().expect("ok flag");
        all &= ok;
        let w = &c["witness"];
        if ok {
            assert!(w.is_null(), "{c}");
        } else if !w.is_null() {
            assert!(w["at"].is_array() && w["lhs"].is_array() && w["rhs"].is_array(), "{c}");
        }
    }
    assert_eq!(v["ok"].as_bool(), Some(all));
    v
}

fn json_run(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = filippov(&full);
    let v = assert_report_schema(&stdout(&out));
    let c = code(&out);
    assert_eq!(c == 0, v["ok"].as_bool().unwrap());
    (c, v)
}

#[test]
fn catalog_round_trip() {
    let dir = TempDir::new().unwrap();
    for entry in catalog::list() {
        let file = show(&dir, entry.example, "x.json");
        let (c, _) = json_run(&["check", p(&file)]);
        assert_eq!(c, 0, "{}", entry.example);
    }
}

#[test]
fn catalog_list_as_json() {
    let out = filippov(&["--format", "json", "catalog", "list"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), catalog::list().len());
}

#[test]
fn shown_builtins_parse_back() {
    let (name, params) = catalog::parse_call("dim4_simple_der(1,2,3,4,5,6)").unwrap();
    let Builtin::Map(expected) = catalog::builtin(&name, &params).unwrap() else {
        panic!("map")
    };
    let out = filippov(&["catalog", "show", "dim4_simple_der(1,2,3,4,5,6)"]);
    assert_eq!(
        json::parse_linear_map(&stdout(&out), Field::Rational).unwrap(),
        expected
    );
    let out = filippov(&["catalog", "show", "dim3_nonabelian", "--field", "Q(i)"]);
    assert_eq!(json::parse_algebra(&stdout(&out)).unwrap().field(), Field::Gaussian);
}

#[test]
fn invalid_json_exits_2_with_position() {
    let dir = TempDir::new().unwrap();
    let full = stdout(&filippov(&["catalog", "show", "dim4_simple"]));
    let file = write(&dir, "cut.json", &full[..full.len() / 2]);
    let out = filippov(&["check", p(&file)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("position"));
    let file = write(&dir, "garbage.json", "{\"kind\": ");
    assert_eq!(code(&filippov(&["check", p(&file)])), 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&filippov(&["check", p(&missing)])), 2);
    let bad_scalar = write(
        &dir,
        "scalar.json",
        r#"{"kind":"n-lie","arity":3,"dim":3,"brackets":[{"on":[1,2,3],"value":{"1":"1/0"}}]}"#,
    );
    assert_eq!(code(&filippov(&["check", p(&bad_scalar)])), 2);
    let out = filippov(&["--format", "json", "check", p(&bad_scalar)]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["ok"], Value::Bool(false));
    assert!(v["error"].is_string());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&filippov(&["frobnicate"])), 2);
    assert_eq!(code(&filippov(&["check"])), 2);
    assert_eq!(code(&filippov(&["--format", "yaml", "catalog", "list"])), 2);
    assert_eq!(code(&filippov(&["catalog", "show", "nonsense"])), 2);
    assert_eq!(code(&filippov(&["catalog", "show", "abelian"])), 2);
    assert_eq!(code(&filippov(&["--help"])), 0);
}

#[test]
fn nijenhuis_on_three_dimensional_algebra_always_passes() {
    let dir = TempDir::new().unwrap();
    let alg = show(&dir, "dim3_nonabelian", "alg.json");
    for seed in 0..5 {
        let out = filippov(&["--seed", &seed.to_string(), "catalog", "random-map", "3"]);
        let map = write(&dir, "map.json", &stdout(&out));
        let (c, v) = json_run(&["nijenhuis", p(&alg), p(&map)]);
        assert_eq!(c, 0);
        assert_eq!(v["data"]["deformed_brackets"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn seeded_maps_are_reproducible() {
    let a = stdout(&filippov(&["--seed", "7", "catalog", "random-map", "4"]));
    let b = stdout(&filippov(&["--seed", "7", "catalog", "random-map", "4"]));
    let c = stdout(&filippov(&["--seed", "8", "catalog", "random-map", "4"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn failed_check_exits_1_with_witness() {
    let dir = TempDir::new().unwrap();
    let alg = show(&dir, "dim4_simple", "alg.json");
    let id = write(
        &dir,
        "id.json",
        &json::linear_map_to_json(&Matrix::identity(Field::Rational, 4)),
    );
    let (c, v) = json_run(&["classify", p(&alg), p(&id)]);
    assert_eq!(c, 1);
    let derivation = &v["checks"][0];
    assert_eq!(derivation["name"], "derivation");
    assert_eq!(derivation["witness"]["at"], serde_json::json!([1, 2, 3]));
    // the identity is Nijenhuis, so the power identity holds trivially
    let (c, v) = json_run(&["power-identity", p(&alg), p(&id), "--exponents", "1,1,1"]);
    assert_eq!((c, v["ok"].as_bool()), (0, Some(true)));
    let n2 = show(&dir, "dim4_simple_der(1,0,0,0,1,1)", "n.json");
    let text = std::fs::read_to_string(&n2).unwrap();
    let n = json::parse_linear_map(&text, Field::Rational).unwrap();
    let sq = write(&dir, "sq.json", &json::linear_map_to_json(&n.matmul(&n)));
    let (c, v) = json_run(&["classify", p(&alg), p(&sq)]);
    assert_eq!(c, 1);
    assert_eq!(v["data"]["nijenhuis"], Value::Bool(true));
    assert_eq!(v["data"]["rota_baxter"], Value::Bool(false));
}

#[test]
fn every_command_reports_under_the_schema() {
    let dir = TempDir::new().unwrap();
    let simple = show(&dir, "dim4_simple", "simple.json");
    let der = show(&dir, "dim4_simple_der(1,2,0,1,0,3)", "der.json");
    let mixed = show(&dir, "dim4_nonsimple_der(1,1,0,0,0,0,0)", "mixed.json");
    let nonsimple = show(&dir, "dim4_nonsimple", "nonsimple.json");
    let lie = show(&dir, "lie_ex1", "lie.json");

    assert_eq!(json_run(&["check", p(&simple)]).0, 0);
    assert_eq!(json_run(&["nijenhuis", p(&simple), p(&der)]).0, 0);
    assert_eq!(json_run(&["classify", p(&simple), p(&der)]).0, 0);
    assert_eq!(json_run(&["classify", p(&nonsimple), p(&mixed)]).0, 1);
    let (c, v) = json_run(&["derivations", p(&nonsimple)]);
    assert_eq!((c, v["data"]["dimension"].as_u64()), (0, Some(7)));
    let (c, v) = json_run(&["deform", p(&simple), p(&der)]);
    assert_eq!(c, 0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 1 + 2 * 7);
    let (c, v) = json_run(&["deform", p(&simple), p(&der), "--lambda", "-1/2", "--lambda", "5"]);
    assert_eq!((c, v["checks"].as_array().unwrap().len()), (0, 5));
    assert_eq!(
        json_run(&["power-identity", p(&simple), p(&der), "--exponents", "3,1,2"]).0,
        0
    );

    let alg = json::parse_algebra(&std::fs::read_to_string(&simple).unwrap()).unwrap();
    let rep = write(&dir, "rep.json", &json::representation_to_json(&adjoint_rep(&alg)));
    let n = json::parse_linear_map(&std::fs::read_to_string(&der).unwrap(), Field::Rational).unwrap();
    let t = write(&dir, "t.json", &json::rect_map_to_json(&n));
    let (c, v) = json_run(&["oop", p(&simple), p(&rep), p(&t), "--lift"]);
    assert_eq!((c, v["checks"].as_array().unwrap().len()), (0, 2));
    let id = write(
        &dir,
        "id.json",
        &json::rect_map_to_json(&Matrix::identity(Field::Rational, 4)),
    );
    assert_eq!(json_run(&["oop", p(&simple), p(&rep), p(&id), "--lift"]).0, 1);

    let f = write(
        &dir,
        "f.json",
        r#"{"kind":"functional","dim":4,"values":["0","0","1","0"]}"#,
    );
    let (c, v) = json_run(&["construct", "extend", p(&lie), p(&f)]);
    assert_eq!((c, v["data"]["arity"].as_u64()), (0, Some(3)));
    let bad_f = write(
        &dir,
        "badf.json",
        r#"{"kind":"functional","dim":4,"values":["1","0","0","0"]}"#,
    );
    let (c, v) = json_run(&["construct", "extend", p(&lie), p(&bad_f)]);
    assert_eq!(c, 1);
    assert_eq!(v["checks"][0]["name"], "functional_vanishes_on_brackets");
    assert!(v["checks"][0]["witness"]["at"].is_array());
}

#[test]
fn associative_constructions() {
    let dir = TempDir::new().unwrap();
    let a = show(&dir, "trunc_poly(2,2)", "a.json");
    let dx = write(
        &dir,
        "dx.json",
        &json::linear_map_to_json(&Matrix::from_i64_rows(
            Field::Rational,
            &[&[0, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1]],
        )),
    );
    let dy = write(
        &dir,
        "dy.json",
        &json::linear_map_to_json(&Matrix::from_i64_rows(
            Field::Rational,
            &[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
        )),
    );
    let n = write(
        &dir,
        "n.json",
        &json::linear_map_to_json(&Matrix::from_i64_rows(
            Field::Rational,
            &[&[5, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 3, 0], &[0, 0, 0, 3]],
        )),
    );
    let (c, v) = json_run(&["construct", "d1d2", p(&a), p(&dx), p(&dy), "--nijenhuis", p(&n)]);
    assert_eq!((c, v["checks"].as_array().unwrap().len()), (0, 2));
    // ∂/∂x fails the derivation precondition
    let partial = write(
        &dir,
        "px.json",
        &json::linear_map_to_json(&Matrix::from_i64_rows(
            Field::Rational,
            &[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]],
        )),
    );
    let (c, v) = json_run(&["construct", "d1d2", p(&a), p(&partial), p(&dy)]);
    assert_eq!(c, 1);
    assert_eq!(v["checks"][0]["name"], "assoc_derivation");

    let t4 = show(&dir, "trunc_poly(4)", "t4.json");
    let euler = write(
        &dir,
        "e.json",
        &json::linear_map_to_json(&Matrix::from_i64_rows(
            Field::Rational,
            &[&[0, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 3]],
        )),
    );
    let f = write(
        &dir,
        "f.json",
        r#"{"kind":"functional","dim":4,"values":["1","0","0","0"]}"#,
    );
    assert_eq!(json_run(&["construct", "fd", p(&t4), p(&f), p(&euler)]).0, 0);

    let a3 = show(&dir, "trunc_poly(2,2,2)", "a3.json");
    let diag = |bit: usize| {
        let mut m = Matrix::zeros(Field::Rational, 8, 8);
        for i in 0..8 {
            m.set(
                i,
                i,
                filippov_core::Scalar::from_i64(Field::Rational, ((i >> bit) & 1) as i64),
            );
        }
        m
    };
    let files: Vec<PathBuf> = (0..3)
        .map(|b| write(&dir, &format!("d{b}.json"), &json::linear_map_to_json(&diag(b))))
        .collect();
    assert_eq!(
        json_run(&["construct", "d1d2d3", p(&a3), p(&files[0]), p(&files[1]), p(&files[2])]).0,
        0
    );
}

#[test]
fn shape_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let alg = show(&dir, "dim3_nonabelian", "alg.json");
    let map = show(&dir, "T2(1,2,3,4)", "map.json");
    assert_eq!(code(&filippov(&["nijenhuis", p(&alg), p(&map)])), 2);
    let small = write(
        &dir,
        "small.json",
        &json::linear_map_to_json(&Matrix::identity(Field::Rational, 3)),
    );
    assert_eq!(
        code(&filippov(&["power-identity", p(&alg), p(&small), "--exponents", "1,2"])),
        2
    );
}
