use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tametilt"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn json(s: &str) -> Value {
    serde_json::from_str(s.trim()).unwrap()
}

#[test]
fn classify_reiten_ringel() {
    let (code, out) = run(&[
        "classify",
        "--pair",
        r#"{"branch":[],"lambda":{"named":[],"rest":true}}"#,
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["schema"], "tametilt/1");
    assert_eq!(v["torsion"]["rest_pruefer"], true);
}

#[test]
fn classify_by_filter() {
    let (code, out) = run(&[
        "--preset",
        "a_3_1",
        "classify",
        "--filter",
        r#"{"a":{"rays":[1],"region":[]}}"#,
    ]);
    assert_eq!(code, 0, "{out}");
    let v = json(&out);
    assert_eq!(v["branch"], serde_json::json!(["a:1[1]", "a:1[2]"]));
}

#[test]
fn branch_enumerate_kronecker() {
    let (code, out) = run(&["branch-enumerate", "--preset", "kronecker"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["branch_modules"], serde_json::json!([[]]));
}

#[test]
fn verify_reports_pass() {
    let (code, out) = run(&["verify", "--rank-max", "3"]);
    assert_eq!(code, 0);
    let last = json(out.lines().last().unwrap());
    assert_eq!(last["totals"]["failures"], 0);
}

#[test]
fn other_subcommands() {
    for args in [
        vec!["dual", "--pair", "{}"],
        vec![
            "decompose",
            "--preset",
            "e_6",
            "--pair",
            r#"{"branch":["b:1[1]"]}"#,
        ],
        vec!["predicates", "--pair", "{}"],
        vec![
            "localize",
            "--preset",
            "d_4",
            "--at",
            r#"["a:1","clique:b"]"#,
        ],
        vec![
            "quotient",
            "--preset",
            "a_3_1",
            "--at",
            r#"["a:1","a:2"]"#,
            "--alpha",
            r#"{"alpha":{"a:1":2}}"#,
        ],
        vec!["presets"],
    ] {
        let (code, out) = run(&args);
        assert_eq!(code, 0, "{args:?}: {out}");
        assert_eq!(json(&out)["schema"], "tametilt/1", "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let (code, out) = run(&["classify", "--pair", "not json"]);
    assert_eq!(code, 2);
    assert_eq!(json(&out)["error"]["check"], "cli.parse");
    let (code, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["--preset", "nope", "branch-enumerate"]);
    assert_eq!(code, 2);
    // a valid request violating an invariant
    let (code, out) = run(&[
        "--preset",
        "a_3_1",
        "classify",
        "--pair",
        r#"{"branch":["a:1[2]"]}"#,
    ]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["error"]["check"], "branch.condition_b");
    let (code, _) = run(&["--preset", "e_8", "verify", "--rank-max", "4"]);
    assert_eq!(code, 1);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "--preset",
        "e_6",
        "decompose",
        "--pair",
        r#"{"branch":["b:1[2]","b:1[1]"],"lambda":{"named":["a"]}}"#,
    ];
    let first = run(&args);
    assert_eq!(first.0, 0, "{}", first.1);
    for _ in 0..3 {
        assert_eq!(run(&args), first);
    }
}

#[test]
fn config_file() {
    let dir = std::env::temp_dir().join(format!("tametilt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("reg.json");
    std::fs::write(
        &path,
        r#"{"tubes":[{"id":"x","rank":2}],"homogeneous_named":["h"],"rest":false}"#,
    )
    .unwrap();
    let (code, out) = run(&["branch-enumerate", "--config", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["branch_modules"].as_array().unwrap().len(), 3);
    let (code, _) = run(&[
        "--preset",
        "kronecker",
        "--config",
        path.to_str().unwrap(),
        "branch-enumerate",
    ]);
    assert_eq!(code, 2);
}
