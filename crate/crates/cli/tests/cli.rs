use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_multiphase"))
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn chart(dir: &Path, payload: &str) -> PathBuf {
    write(dir, "chart.json", &format!(r#"{{"schema_version":"1","kind":"chart","payload":{payload}}}"#))
}

fn doc(dir: &Path, name: &str, kind: &str, payload: &str) -> PathBuf {
    write(dir, name, &format!(r#"{{"schema_version":"1","kind":"{kind}","payload":{payload}}}"#))
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let Output { status, stdout, stderr } = cmd.output().unwrap();
    (status.code().unwrap(), String::from_utf8(stdout).unwrap(), String::from_utf8(stderr).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn classify_reports_verdicts_with_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let c = chart(dir.path(), r#"{"kind":"extended","n":2,"N":1}"#);
    let dq = doc(dir.path(), "dq.json", "vector_field", r#"{"components":{"q1":"1"}}"#);
    let (code, out, _) =
        run(bin().args(["classify", "--format", "json", "--chart"]).arg(&c).arg("--field").arg(&dq));
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["payload"]["status"], "exact_hamiltonian");
    assert_eq!(v["kind"], "verdict");

    let qdp = doc(dir.path(), "qdp.json", "vector_field", r#"{"components":{"p":"q1"}}"#);
    let (code, out, _) =
        run(bin().args(["classify", "--format", "json", "--chart"]).arg(&c).arg("--field").arg(&qdp));
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["payload"]["status"], "not_hamiltonian");
    assert_eq!(v["payload"]["witness"]["index"], serde_json::json!(["x1", "x2", "q1"]));
    assert_eq!(v["payload"]["witness"]["coefficient"], "-1");
}

#[test]
fn ordinary_charts_classify_vertically() {
    let dir = tempfile::tempdir().unwrap();
    let c = chart(dir.path(), r#"{"kind":"ordinary","n":2,"N":1,"nhat":2}"#);
    let x = doc(dir.path(), "x.json", "vector_field", r#"{"components":{"q1":"p1_1"}}"#);
    let (code, out, _) = run(bin().args(["classify", "--chart"]).arg(&c).arg("--field").arg(&x));
    assert_eq!(code, 0);
    assert!(out.starts_with("status: not_hamiltonian"), "{out}");

    let horizontal = doc(dir.path(), "h.json", "vector_field", r#"{"components":{"x1":"1"}}"#);
    let (code, _, err) = run(bin().args(["classify", "--chart"]).arg(&c).arg("--field").arg(&horizontal));
    assert_eq!(code, 2, "{err}");
}

#[test]
fn input_errors_exit_two_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let c = chart(dir.path(), r#"{"kind":"ordinary","n":1,"N":1,"nhat":1}"#);
    let missing = doc(dir.path(), "m.json", "vector_field", r#"{"components":{"p":"1"}}"#);
    let (code, _, err) = run(bin().args(["classify", "--chart"]).arg(&c).arg("--field").arg(&missing));
    assert_eq!(code, 2);
    assert!(err.contains("\"p\""), "{err}");

    let repeated =
        doc(dir.path(), "r.json", "form", r#"{"degree":2,"terms":[{"index":["q1","q1"],"coeff":"1"}]}"#);
    let (code, _, err) = run(bin().args(["solve", "--chart"]).arg(&c).arg("--form").arg(&repeated));
    assert_eq!(code, 2, "{err}");

    let garbage = write(dir.path(), "g.json", "{not json");
    let (code, _, _) = run(bin().args(["classify", "--chart"]).arg(&garbage).arg("--field").arg(&missing));
    assert_eq!(code, 2);

    let (code, _, _) = run(bin().args(["verify", "--suite", "nonsense"]));
    assert_eq!(code, 2);
}

#[test]
fn construct_then_classify_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let c = chart(dir.path(), r#"{"kind":"extended","n":2,"N":1}"#);
    let g = doc(dir.path(), "g.json", "generators", r#"{"xmu":["0","0"],"xi":["0"],"f0":["x1*q1","0"]}"#);
    let out_path = dir.path().join("x.json");
    let (code, text, err) =
        run(bin().args(["construct", "--chart"]).arg(&c).arg("--data").arg(&g).arg("--out").arg(&out_path));
    assert_eq!(code, 0, "{err}");
    assert!(text.contains("(x1) d/dp1_1"), "{text}");
    let written = json(&std::fs::read_to_string(&out_path).unwrap());
    assert_eq!(written["payload"]["components"]["p"], "q1");
    assert_eq!(written["payload"]["components"]["p1_1"], "x1");
    assert_eq!(written["payload"]["hamiltonian"]["kind"], "form");

    let (code, out, _) =
        run(bin().args(["classify", "--format", "json", "--chart"]).arg(&c).arg("--field").arg(&out_path));
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["payload"]["status"], "locally_hamiltonian");
    assert_eq!(v["payload"]["generators"]["f0"], serde_json::json!(["x1*q1", "0"]));

    let bad = doc(dir.path(), "bad.json", "generators", r#"{"xmu":["0","0"],"xi":["p1_1"],"f0":["0","0"]}"#);
    let (code, _, _) = run(bin().args(["construct", "--chart"]).arg(&c).arg("--data").arg(&bad));
    assert_eq!(code, 2);
}

#[test]
fn solve_inverts_and_reports_not_in_image() {
    let dir = tempfile::tempdir().unwrap();
    let c = chart(dir.path(), r#"{"kind":"extended","n":2,"N":1}"#);
    let f = doc(
        dir.path(),
        "f.json",
        "form",
        r#"{"degree":1,"terms":[{"index":["x2"],"coeff":"p1_1"},{"index":["x1"],"coeff":"-p1_2"}]}"#,
    );
    let (code, out, err) =
        run(bin().args(["solve", "--format", "json", "--chart"]).arg(&c).arg("--form").arg(&f));
    assert_eq!(code, 0, "{err}");
    assert_eq!(json(&out)["payload"]["components"], serde_json::json!({"q1": "1"}));

    let outside =
        doc(dir.path(), "o.json", "form", r#"{"degree":1,"terms":[{"index":["p1_1"],"coeff":"p"}]}"#);
    let (code, _, err) = run(bin().args(["solve", "--chart"]).arg(&c).arg("--form").arg(&outside));
    assert_eq!(code, 1, "{err}");

    let o = write(
        dir.path(),
        "o3.json",
        r#"{"schema_version":"1","kind":"chart","payload":{"kind":"ordinary","n":2,"N":1,"nhat":2}}"#,
    );
    let s = doc(
        dir.path(),
        "s.json",
        "vvform",
        r#"{"degree":0,"components":[{"label":"e1","terms":[{"index":[],"coeff":"p1_1"}]},{"label":"e2","terms":[{"index":[],"coeff":"p1_2"}]}]}"#,
    );
    let (code, out, err) = run(bin().args(["solve", "--chart"]).arg(&o).arg("--form").arg(&s));
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, "X = (1) d/dq1\n");
}

#[test]
fn show_renders_canonical_forms() {
    let dir = tempfile::tempdir().unwrap();
    let c = chart(dir.path(), r#"{"kind":"extended","n":1,"N":1}"#);
    let (code, out, _) = run(bin().args(["show", "omega", "--chart"]).arg(&c));
    assert_eq!(code, 0);
    assert_eq!(out, "dx1^dp + dq1^dp1_1\n");
    let (code, _, _) = run(bin().args(["show", "omega_hat", "--chart"]).arg(&c));
    assert_eq!(code, 2);
}

#[test]
fn verify_is_deterministic_and_exit_coded() {
    let args = ["verify", "--suite", "all", "--trials", "6", "--seed", "42"];
    let (code, a, _) = run(bin().args(args));
    let (_, b, _) = run(bin().args(args));
    assert_eq!(code, 0, "{a}");
    assert_eq!(a, b);
    let report = json(&a);
    assert_eq!(report["passed"], 6);
    assert_eq!(report["trials"], 6);

    let (code, out, _) = run(bin().args(["verify", "--suite", "all", "--trials", "0"]));
    assert_eq!(code, 0);
    assert_eq!(json(&out)["trials"], 0);

    let (code, out, _) =
        run(bin()
            .args(["verify", "--suite", "kernel", "--trials", "100", "--seed", "42", "--format", "text"]));
    assert_eq!(code, 0);
    assert!(out.starts_with("suite kernel: 100/100 trials passed"), "{out}");
}

#[test]
fn corrupted_construct_formula_is_caught() {
    let (code, out, _) = run(bin().args([
        "verify",
        "--suite",
        "multisymplectic",
        "--trials",
        "12",
        "--seed",
        "3",
        "--mutate",
        "construct-sign",
    ]));
    assert_eq!(code, 1);
    let report = json(&out);
    let failures = report["failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    assert!(failures.iter().any(|f| f.get("witness").is_some()));
    let f = &failures[0];
    assert!(f["inputs"]["generators"]["kind"] == "generators");
    assert!(f["child_seed"].is_u64());
}
