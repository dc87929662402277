use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_todorov"))
        .args(args)
        .arg("--quiet")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(bytes) = stdin {
            pipe.write_all(bytes).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn example(name: &str, extra: &[&str]) -> Vec<u8> {
    let mut args = vec!["example", name];
    args.extend_from_slice(extra);
    let out = run(&args, None);
    assert_eq!(out.status.code(), Some(0));
    out.stdout
}

#[test]
fn example_pipes_into_validate() {
    let cfg = example("kummer", &["--j", "0"]);
    let out = run(&["validate", "-"], Some(&cfg));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["invariants"]["K2"], 8);
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"K2\": 8"));
}

#[test]
fn descend_a17_ends_at_k2_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a17.json");
    std::fs::write(&path, example("a17", &[])).unwrap();
    let out = run(&["descend", path.to_str().unwrap(), "--certify"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["K2"], 1);
    assert_eq!(v["steps"].as_array().unwrap().last().unwrap()["K2"], 1);
    assert_eq!(v["splitting"]["passed"], true);

    let out = run(&["descend", path.to_str().unwrap(), "--steps", "0"], None);
    assert_eq!(json(&out)["K2"], 2);
}

#[test]
fn malformed_and_invalid_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, b"{ not json").unwrap();
    assert_eq!(
        run(&["validate", garbage.to_str().unwrap()], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["validate", "/nonexistent/x.json"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(run(&["example", "unknown"], None).status.code(), Some(2));

    // drop one branch curve: still well formed, but t = 8
    let mut cfg: Value = serde_json::from_slice(&example("kunev", &[])).unwrap();
    cfg["A"].as_array_mut().unwrap().pop();
    let bytes = serde_json::to_vec(&cfg).unwrap();
    let out = run(&["validate", "-"], Some(&bytes));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["report"]["passed"], false);
    assert_eq!(
        run(&["invariants", "-"], Some(&bytes)).status.code(),
        Some(1)
    );
}

#[test]
fn output_is_byte_stable_and_round_trips() {
    for name in ["kummer", "kunev", "non-kummer-2", "non-kummer-3", "a17"] {
        let first = example(name, &[]);
        assert_eq!(first, example(name, &[]), "{name}");
        let out = run(&["validate", "-"], Some(&first));
        assert_eq!(out.status.code(), Some(0), "{name}");
        // re-emitting the parsed configuration gives the same bytes
        let cfg: todorov::config::BranchConfiguration = serde_json::from_slice(&first).unwrap();
        let again =
            serde_json::to_string_pretty(&serde_json::to_value(&cfg).unwrap()).unwrap() + "\n";
        assert_eq!(again.as_bytes(), first.as_slice(), "{name}");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.find("\"invariants\"").unwrap() < text.find("\"report\"").unwrap());
    }
}

#[test]
fn graph_commands() {
    // A(3) chain plus an isolated curve in the nodal lattice of that graph
    let graph = br#"{
        "lattice": {"basis": ["a", "b", "c", "d"],
                    "gram": [[-2, 1, 0, 0], [1, -2, 1, 0], [0, 1, -2, 0], [0, 0, 0, -2]]},
        "vertices": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    }"#;
    let out = run(&["classify", "-"], Some(graph));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v[0]["type"], "A(3)");
    assert_eq!(v[1]["type"], "A(1)");
    let out = run(&["markings", "-"], Some(graph));
    let v = json(&out);
    assert_eq!(v[0]["markings"], serde_json::json!([[0, 2]]));
    assert_eq!(v[1]["markings"], serde_json::json!([[3]]));
}

#[test]
fn resolve_and_sd_check() {
    let out = run(&["resolve", "-"], Some(&example("a17-plane", &[])));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["chi"], 2);
    assert!(v["negligible"]
        .as_object()
        .unwrap()
        .values()
        .all(|b| b == true));

    let odd = br#"{"degree": 5, "points": []}"#;
    assert_eq!(run(&["resolve", "-"], Some(odd)).status.code(), Some(2));

    let sd = example("sd-iii-b", &[]);
    let out = run(&["sd-check", "-"], Some(&sd));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["D_square"], 4);

    let mut doc: Value = serde_json::from_slice(&sd).unwrap();
    doc["case"] = "iii.a".into();
    let out = run(&["sd-check", "-"], Some(&serde_json::to_vec(&doc).unwrap()));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verified"], false);
}

#[test]
fn example_listing_and_checks() {
    let out = run(&["example", "--list"], None);
    assert!(json(&out).as_array().unwrap().len() >= 4);
    let out = run(&["example", "kunev", "--describe"], None);
    assert!(json(&out)["summary"]
        .as_str()
        .unwrap()
        .contains("two cubics and a line"));
    let out = run(&["example", "--all", "--check"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)
        .as_array()
        .unwrap()
        .iter()
        .all(|o| o["passed"] == true));
}
