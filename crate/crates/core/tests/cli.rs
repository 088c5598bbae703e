use serde_json::Value;
use std::io::Write;
use std::process::{Command, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_branchcover");

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, text) = run(args);
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?} printed non-JSON ({e}): {text}")))
}

#[test]
fn every_sample_runs_cleanly() {
    let cases = [
        ("validate", "rabbit.json"),
        ("portrait", "basilica.json"),
        ("orbifold", "z_squared.json"),
        ("stability", "rabbit.json"),
        ("obstruction", "levy_two_cycle.json"),
        ("levy", "nested_inner_loop.json"),
        ("torus-classify", "torus_anosov.json"),
        ("torus-classify", "torus_rotation.json"),
        ("torus-orbit", "torus_parabolic.json"),
        ("descend", "torus_half_shift.json"),
        ("constants", "constants.json"),
    ];
    for (cmd, file) in cases {
        let (code, _) = run_json(&[cmd, &data(file)]);
        assert_eq!(code, 0, "{cmd} {file}");
    }
}

#[test]
fn riemann_hurwitz_violation_exits_one() {
    let (code, v) = run_json(&["validate", &data("rh_violation.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["valid"], false);
    assert!(v["violations"].to_string().contains("riemann-hurwitz"));
}

#[test]
fn malformed_input_exits_two_with_a_pointer() {
    let (code, v) = run_json(&["validate", "{not json"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "malformed input");

    let doc = r#"{"surface":"sphere","degree":2,"vertices":[{"id":"a","local_degree":2,"marked":"yes"}],"forward":{"a":"a"}}"#;
    let (code, v) = run_json(&["validate", doc]);
    assert_eq!(code, 2);
    assert_eq!(v["path"], "/vertices/0/marked");

    let (code, _) = run_json(&["orbifold", &data("does_not_exist.json")]);
    assert_eq!(code, 2);
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        vec!["stability".to_string(), data("rabbit.json")],
        vec!["torus-classify".to_string(), data("torus_doubling.json")],
        vec!["gen-skeleton".to_string(), "--seed".into(), "11".into(), "--count".into(), "5".into()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(run(&args), run(&args));
    }
}

#[test]
fn documents_round_trip_through_validate() {
    let (_, v) = run_json(&["descend", &data("torus_doubling.json")]);
    let skeleton = v["skeleton"].to_string();
    let (code, report) = run_json(&["validate", &skeleton]);
    assert_eq!(code, 0, "{report}");
}

#[test]
fn generated_skeletons_validate() {
    for flags in [&[][..], &["--polynomial"][..]] {
        let mut args = vec!["gen-skeleton", "--seed", "42", "--count", "20"];
        args.extend_from_slice(flags);
        let (code, docs) = run_json(&args);
        assert_eq!(code, 0);
        for doc in docs.as_array().unwrap() {
            let (code, report) = run_json(&["validate", &doc.to_string()]);
            assert_eq!(code, 0, "{doc} gave {report}");
        }
    }
}

#[test]
fn generated_levy_instances_pass_the_check() {
    let (code, docs) = run_json(&["gen-skeleton", "--seed", "9", "--count", "10", "--levy"]);
    assert_eq!(code, 0);
    for doc in docs.as_array().unwrap() {
        let (code, report) = run_json(&["levy", &doc.to_string()]);
        assert_eq!(code, 0);
        assert_eq!(report["levy_check"]["pass"], true, "{doc}");
    }
}

#[test]
fn reads_standard_input() {
    let mut child = Command::new(BIN)
        .args(["orbifold", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let doc = std::fs::read_to_string(data("basilica.json")).unwrap();
    child.stdin.take().unwrap().write_all(doc.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["type"], "hyperbolic");
    assert_eq!(v["euler"], "-1");
}

#[test]
fn text_format_lists_paths() {
    let (code, text) = run(&["--format", "text", "orbifold", &data("rabbit.json")]);
    assert_eq!(code, 0);
    assert!(text.lines().any(|l| l == "type: hyperbolic"));
    assert!(text.lines().any(|l| l == "labels.p1: inf"));
}

#[test]
fn sample_results() {
    let (_, v) = run_json(&["stability", &data("rabbit.json")]);
    assert_eq!(v["infinitely_stable"], serde_json::json!(["inf", "p1"]));

    let (_, v) = run_json(&["obstruction", &data("levy_two_cycle.json")]);
    assert_eq!(v["srs_exists"], true);

    let (_, v) = run_json(&["torus-classify", &data("torus_parabolic.json")]);
    assert_eq!(v["flags"], serde_json::json!(["strongly_reducible"]));

    let (_, v) = run_json(&["torus-orbit", "--steps", "4", &data("torus_parabolic.json")]);
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 5);
    assert_eq!(points[4]["re"], 2.0);

    let (_, v) = run_json(&["constants", &data("constants.json")]);
    assert_eq!(v["C_exact"], "27");
    assert_eq!(v["r_bound_exact"], "27/2");

    let (_, v) = run_json(&["descend", &data("torus_doubling.json")]);
    assert_eq!(v["exceptional"], true);
    assert_eq!(v["orbifold"]["type"], "euclidean");
}
