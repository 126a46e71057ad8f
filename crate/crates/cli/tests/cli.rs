use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn burncat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_burncat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = burncat(&full);
    assert!(o.status.code().is_some_and(|c| c < 2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(format!("{name}.schema.json"));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn assert_valid(name: &str, v: &Value) {
    let errors: Vec<String> = schema(name).iter_errors(v).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{v}");
}

#[test]
fn marks_example() {
    let v = json(&["burnside", "marks", "--group", "C2"]);
    assert_eq!(v["classes"], serde_json::json!(["e", "C2"]));
    assert_eq!(v["matrix"], serde_json::json!([[2, 0], [1, 1]]));
}

#[test]
fn sets_models_up_to_two() {
    assert_eq!(json(&["models", "enumerate", "--theory", "sets", "--size", "2"])["count"], 2);
}

fn schema_cases() -> Vec<(&'static str, Vec<String>)> {
    let d = data;
    let a = |parts: &[&str]| parts.iter().map(|p| p.to_string()).collect::<Vec<String>>();
    vec![
        ("biproduct_report", a(&["burnside", "hom", "--m", "1", "--n", "2"])),
        ("span_composition", a(&["burnside", "compose", "--spans", &d("spans.json")])),
        ("table_of_marks", a(&["burnside", "marks", "--group", "D4"])),
        ("burnside_ring", a(&["burnside", "ring", "--group", "S3"])),
        ("monoid_check", a(&["cmon", "check", &d("z2.json")])),
        ("monoid_check", a(&["cmon", "check", &d("magma.json")])),
        ("grothendieck_group", a(&["cmon", "grothendieck", &d("chain3.json")])),
        ("tensor_product", a(&["cmon", "tensor", &d("z2.json"), &d("chain3.json")])),
        ("monoid_listing", a(&["cmon", "enumerate", "--size", "3"])),
        ("monoid_listing", a(&["cmon", "enumerate", "--size", "8", "--grouplike"])),
        ("category_report", a(&["cat", "check", &d("arrow.json")])),
        ("properties", a(&["cat", "properties", &d("arrow.json")])),
        ("fincat", a(&["cat", "complete", &d("z2_mat.json")])),
        ("cyclic_skeleton", a(&["cat", "skeleton", &d("z2_mat.json"), "--point", "1"])),
        ("category_with_monoid", a(&["cat", "mat", "--semiring", "mod:2", "--max", "2"])),
        ("model_listing", a(&["models", "enumerate", "--theory", "cmon", "--size", "3"])),
        ("model_listing", a(&["models", "enumerate", "--theory", "ab", "--size", "8"])),
        ("model_listing", a(&["models", "enumerate", "--theory", "ptdsets", "--size", "3"])),
        ("model_listing", a(&["models", "enumerate", "--theory", "gsets:S3", "--size", "3"])),
        ("model_check", a(&["models", "check", "--theory", "cmon", "--model", &d("magma_model.json")])),
        ("evaluation", a(&["models", "eval", "--theory", "cmon", "--model", &d("z2_model.json"), "--matrix", "[[1,1]]"])),
        ("evaluation", a(&["models", "eval", "--theory", "gsets:C2", "--model", &d("c2_model.json"), "--gmap", &d("collapse.json")])),
        ("fixed_point_model", a(&["models", "fixed-points", "--gset", &d("regular_c2.json")])),
        ("cyclic", a(&["models", "cyclic", "--theory", "cmon"])),
        ("cyclic", a(&["models", "cyclic", "--action", &d("extra_object.json")])),
        ("group_info", a(&["groups", "info", "--group", "D4"])),
        ("gset_canonical", a(&["groups", "canonical", "--gset", &d("regular_c2.json")])),
    ]
}

#[test]
fn json_outputs_match_schemas() {
    for (name, args) in schema_cases() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_valid(name, &json(&args));
    }
}

#[test]
fn inputs_match_schemas() {
    let cases = [
        ("comm_monoid", "z2.json"),
        ("comm_monoid", "magma.json"),
        ("fincat", "arrow.json"),
        ("gset", "regular_c2.json"),
        ("span_list", "spans.json"),
        ("model", "z2_model.json"),
        ("model", "pointed2.json"),
        ("model", "c2_model.json"),
        ("gmap", "collapse.json"),
        ("object_action", "extra_object.json"),
        ("category_with_monoid", "z2_mat.json"),
    ];
    for (name, file) in cases {
        let v: Value = serde_json::from_str(&std::fs::read_to_string(data(file)).unwrap()).unwrap();
        assert_valid(name, &v);
    }
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["burnside", "ring", "--group", "D4"],
        vec!["models", "enumerate", "--theory", "gsets:C2", "--size", "3"],
        vec!["cmon", "enumerate", "--size", "4", "--format", "csv"],
        vec!["cat", "mat", "--semiring", "boolean", "--max", "2", "--format", "json"],
    ] {
        assert_eq!(burncat(&args).stdout, burncat(&args).stdout, "{args:?}");
    }
}

#[test]
fn verify_is_deterministic_and_valid() {
    let a = burncat(&["verify", "--seed", "42", "--format", "json"]);
    let b = burncat(&["verify", "--seed", "42", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_valid("verify_report", &serde_json::from_slice(&a.stdout).unwrap());
}

#[test]
fn exit_codes() {
    assert_eq!(burncat(&["cmon", "check", &data("z2.json")]).status.code(), Some(0));
    assert_eq!(burncat(&["cmon", "check", &data("magma.json")]).status.code(), Some(1));
    let model = data("magma_model.json");
    assert_eq!(burncat(&["models", "check", "--theory", "cmon", "--model", &model]).status.code(), Some(1));
    assert_eq!(burncat(&["nonsense"]).status.code(), Some(2));
    assert_eq!(burncat(&["burnside", "marks"]).status.code(), Some(2));
    assert_eq!(burncat(&["burnside", "marks", "--group", "A5"]).status.code(), Some(2));
    assert_eq!(burncat(&["cmon", "enumerate", "--size", "9"]).status.code(), Some(2));
    assert_eq!(burncat(&["models", "enumerate", "--theory", "rings", "--size", "2"]).status.code(), Some(2));
    assert_eq!(burncat(&["cmon", "check", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn parse_errors_are_located() {
    let o = burncat(&["cmon", "check", &data("broken.json")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("broken.json:4:1:"), "{err}");
    let o = burncat(&["cmon", "check", &data("arrow.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("arrow.json:1:"));
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_burncat"))
        .args(["cmon", "grothendieck", "-", "--format", "json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(std::fs::read(data("chain3.json")).unwrap().as_slice())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    // a semilattice completes to the trivial group
    assert_eq!(v["group"]["size"], 1);
}

#[test]
fn eval_and_verdicts() {
    let xor = json(&["models", "eval", "--theory", "cmon", "--model", &data("z2_model.json"), "--matrix", "[[1,1]]"]);
    assert_eq!(xor["graph"], serde_json::json!([[[0, 0], [0]], [[0, 1], [1]], [[1, 0], [1]], [[1, 1], [0]]]));
    let ptd = json(&["models", "eval", "--theory", "ptdsets", "--model", &data("pointed2.json"), "--map", "[1,null]", "--arity", "2"]);
    assert_eq!(ptd["graph"][1], serde_json::json!([[0, 1], [1, 0]]));
    let g = json(&["models", "eval", "--theory", "gsets:C2", "--model", &data("c2_model.json"), "--gmap", &data("collapse.json")]);
    assert_eq!(g["graph"], serde_json::json!([[[2], [2, 2]]]));
    assert_eq!(json(&["models", "cyclic", "--action", &data("extra_object.json")])["cyclic"], false);
    let p = json(&["cat", "properties", &data("arrow.json")]);
    assert_eq!((p["cartesian"].clone(), p["semiadditive"].clone()), (Value::Bool(true), Value::Bool(false)));
}

#[test]
fn table_and_csv_views() {
    let t = stdout(&burncat(&["burnside", "marks", "--group", "C2"]));
    assert_eq!(t, "    e  C2\ne   2  0\nC2  1  1\n");
    let c = stdout(&burncat(&["burnside", "marks", "--group", "C2", "--format", "csv"]));
    assert_eq!(c, ",e,C2\ne,2,0\nC2,1,1\n");
}
