use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_hyperturan");

fn tmp(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env("HYPERTURAN_THREADS", "1")
        .output()
        .expect("binary executes")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {:?}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

/// Last stderr line is the run manifest.
fn manifest(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    let line = text.lines().last().expect("stderr carries a manifest line");
    serde_json::from_str(line).expect("manifest line is JSON")
}

/// Removes the reproducibility-exempt fields everywhere in the tree.
fn strip_volatile(value: &mut Value) {
    match value {
        Value::Object(map) => {
            map.remove("nodes");
            map.remove("elapsed");
            for v in map.values_mut() {
                strip_volatile(v);
            }
        }
        Value::Array(items) => {
            for v in items {
                strip_volatile(v);
            }
        }
        _ => {}
    }
}

#[test]
fn construct_affine_plane_golden() {
    let out_path = tmp("ag3.lhg");
    let out = run(&["construct", "--method", "ag", "--param", "3", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["n"], 9);
    assert_eq!(json["r"], 3);
    assert_eq!(json["edges"].as_array().unwrap().len(), 12);

    let m = manifest(&out);
    assert_eq!(m["command"], "construct");
    assert_eq!(m["status"], "success");
    assert_eq!(m["input_digest"], Value::Null);
    assert_eq!(m["output"][0], out_path.to_str().unwrap());

    let verify = run(&["verify", "--input", out_path.to_str().unwrap()]);
    assert_eq!(code(&verify), 0);
    let report = stdout_json(&verify);
    assert_eq!(report["valid"], true);
    assert_eq!(report["steiner"], true);
    assert_eq!(report["edges"], 12);
    let m = manifest(&verify);
    assert!(m["input_digest"].as_str().unwrap().starts_with("fnv1a:"));
}

#[test]
fn construct_unavailable_design() {
    let out = run(&["construct", "--method", "sts", "--param", "8"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out), Value::Null);
    assert_eq!(manifest(&out)["status"], "not-found");
}

#[test]
fn verify_rejects_bad_inputs() {
    let missing = run(&["verify", "--input", tmp("nope.lhg").to_str().unwrap()]);
    assert_eq!(code(&missing), 65);

    let malformed = tmp("malformed.lhg");
    std::fs::write(&malformed, "bogus\n").unwrap();
    let out = run(&["verify", "--input", malformed.to_str().unwrap()]);
    assert_eq!(code(&out), 65);
    assert_eq!(manifest(&out)["status"], "data-error");

    let nonlinear = tmp("nonlinear.lhg");
    std::fs::write(&nonlinear, "3 5 2\n0 1 2\n0 1 3\n").unwrap();
    let out = run(&["verify", "--input", nonlinear.to_str().unwrap()]);
    assert_eq!(code(&out), 65);
}

#[test]
fn detect_matrix() {
    let plane = tmp("detect-ag3.lhg");
    run(&["construct", "--method", "ag", "--param", "3", "--out", plane.to_str().unwrap()]);
    let plane = plane.to_str().unwrap();

    let absent = run(&["detect", "--pattern", "b4", "--input", plane]);
    assert_eq!(code(&absent), 1);
    assert_eq!(stdout_json(&absent), Value::Null);
    assert_eq!(manifest(&absent)["status"], "not-found");

    let star = run(&["detect", "--pattern", "star:4", "--input", plane]);
    assert_eq!(code(&star), 0);
    let embedding = stdout_json(&star);
    assert_eq!(embedding["edge_map"].as_array().unwrap().len(), 4);

    let crown = run(&["detect", "--pattern", "crown", "--input", plane]);
    assert_eq!(code(&crown), 0);

    let path = run(&["detect", "--pattern", "path:2", "--input", plane]);
    assert_eq!(code(&path), 0);

    assert_eq!(code(&run(&["detect", "--pattern", "path:5", "--input", plane])), 64);
    assert_eq!(code(&run(&["detect", "--pattern", "star:0", "--input", plane])), 64);
    assert_eq!(code(&run(&["detect", "--pattern", "wedge", "--input", plane])), 64);

    let graph = tmp("plain-graph.lhg");
    std::fs::write(&graph, "2 4 2\n0 1\n2 3\n").unwrap();
    let out = run(&["detect", "--pattern", "b4", "--input", graph.to_str().unwrap()]);
    assert_eq!(code(&out), 65);
}

#[test]
fn bound_goldens() {
    let crown = run(&["bound", "--kind", "crown4", "--n", "9", "--r", "3"]);
    assert_eq!(code(&crown), 0);
    let json = stdout_json(&crown);
    assert_eq!(json["value"], "15/1");
    assert_eq!(json["floor"], 15);
    assert_eq!(json["statement"], "crown-upper");
    assert_eq!(json["side"], "upper");

    let path2 = run(&["bound", "--kind", "path", "--n", "7", "--r", "3", "--k", "2"]);
    let json = stdout_json(&path2);
    assert_eq!(json["value"], "7/3");
    assert_eq!(json["floor"], 2);
    assert_eq!(json["side"], "exact");

    let pair = run(&["bound", "--kind", "pair", "--n", "9", "--r", "3"]);
    assert_eq!(stdout_json(&pair)["value"], "12/1");

    assert_eq!(code(&run(&["bound", "--kind", "star", "--n", "9", "--r", "3"])), 64);
    assert_eq!(code(&run(&["bound", "--kind", "pair", "--n", "9", "--r", "3", "--k", "2"])), 64);
    assert_eq!(code(&run(&["bound", "--kind", "broom4", "--n", "9", "--r", "2"])), 64);
}

#[test]
fn witness_constructions() {
    let out_path = tmp("tree14.lhg");
    let out = run(&[
        "construct-witness", "--kind", "tree-lower", "--n", "14", "--r", "3", "--k", "4",
        "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["floor"], 14);
    assert_eq!(report["witness"]["edges"].as_array().unwrap().len(), 14);
    let verify = run(&["verify", "--input", out_path.to_str().unwrap()]);
    assert_eq!(code(&verify), 0);

    let p4 = run(&["construct-witness", "--kind", "p4-lower", "--n", "9", "--r", "3"]);
    assert_eq!(code(&p4), 0);
    assert_eq!(stdout_json(&p4)["floor"], 12);

    let bad_n = run(&["construct-witness", "--kind", "tree-lower", "--n", "10", "--r", "3", "--k", "4"]);
    assert_eq!(code(&bad_n), 1);
    assert_eq!(stdout_json(&bad_n), Value::Null);

    assert_eq!(code(&run(&["construct-witness", "--kind", "tree-lower", "--n", "14", "--r", "3"])), 64);
    assert_eq!(
        code(&run(&["construct-witness", "--kind", "p4-lower", "--n", "9", "--r", "3", "--k", "2"])),
        64
    );
}

#[test]
fn certificate_pass_and_fail() {
    let plane = tmp("certify-ag3.lhg");
    run(&["construct", "--method", "ag", "--param", "3", "--out", plane.to_str().unwrap()]);
    let out = run(&["certify-b4", "--input", plane.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["pass"], true);

    // Drop the last block: still linear and broom-free, wrong edge count.
    let text = std::fs::read_to_string(&plane).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.remove(lines.len() - 1);
    lines[0] = "3 9 11";
    let truncated = tmp("certify-truncated.lhg");
    std::fs::write(&truncated, lines.join("\n") + "\n").unwrap();
    let out = run(&["certify-b4", "--input", truncated.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let json = stdout_json(&out);
    assert_eq!(json["pass"], false);
    assert_eq!(json["failure"]["clause"], "edge-count");
    assert_eq!(manifest(&out)["status"], "certificate-fail");
}

#[test]
fn search_goldens() {
    let out = run(&["search", "--n", "6", "--r", "3", "--forbid", "s:3"]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["value"], 4);
    assert_eq!(json["optimal"], true);
    assert_eq!(
        json["witness"]["edges"],
        serde_json::json!([[0, 1, 2], [0, 3, 4], [1, 3, 5], [2, 4, 5]])
    );

    let off = run(&["search", "--n", "6", "--r", "3", "--forbid", "s:3", "--symmetry", "off"]);
    let mut a = stdout_json(&out);
    let mut b = stdout_json(&off);
    strip_volatile(&mut a);
    strip_volatile(&mut b);
    assert_eq!(a, b);

    let truncated = run(&["search", "--n", "9", "--r", "3", "--node-budget", "5"]);
    assert_eq!(code(&truncated), 3);
    assert_eq!(stdout_json(&truncated)["optimal"], false);
    assert_eq!(manifest(&truncated)["status"], "budget-truncated");

    assert_eq!(code(&run(&["search", "--n", "25", "--r", "3"])), 64);
    assert_eq!(code(&run(&["search", "--n", "6", "--r", "3", "--forbid", "p9"])), 64);
}

#[test]
fn probe_outcomes() {
    let out = run(&["probe", "--n", "3", "--r", "3"]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["search"]["value"], 1);
    assert_eq!(json["consistent"], true);
    assert_eq!(json["ceiling"], "4/1");
    assert_eq!(json["status"], "optimal");

    let starved = run(&["probe", "--n", "9", "--r", "3", "--node-budget", "3"]);
    assert_eq!(code(&starved), 3);
    assert_eq!(stdout_json(&starved)["status"], "inconclusive");

    assert_eq!(code(&run(&["probe", "--n", "6", "--r", "2"])), 64);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&run(&["nosuchcommand"])), 64);
    assert_eq!(code(&run(&["search", "--n", "6"])), 64);
    assert_eq!(code(&run(&["construct", "--method", "xy", "--param", "3"])), 64);
    let out = run(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("search"));
}

#[test]
fn bad_thread_env_is_usage_error() {
    let out = Command::new(BIN)
        .args(["search", "--n", "6", "--r", "3"])
        .env("HYPERTURAN_THREADS", "many")
        .output()
        .expect("binary executes");
    assert_eq!(code(&out), 64);
    let out = Command::new(BIN)
        .args(["search", "--n", "6", "--r", "3"])
        .env("HYPERTURAN_THREADS", "0")
        .output()
        .expect("binary executes");
    assert_eq!(code(&out), 64);
}

#[test]
fn identical_runs_identical_outputs() {
    let args = ["search", "--n", "8", "--r", "3", "--forbid", "b4"];
    let mut a = stdout_json(&run(&args));
    let mut b = stdout_json(&run(&args));
    // Node counts are deterministic too; only elapsed may differ.
    assert_eq!(a["nodes"], b["nodes"]);
    strip_volatile(&mut a);
    strip_volatile(&mut b);
    assert_eq!(a, b);
}

/// Every `$ hyperturan …` example in the README runs in CI and its printed
/// JSON must match, except for the node and elapsed fields.
#[test]
fn readme_examples_match() {
    let readme_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../README.md");
    let readme = std::fs::read_to_string(&readme_path).expect("workspace README exists");
    let mut examples: Vec<(Vec<String>, String)> = Vec::new();
    let mut lines = readme.lines().peekable();
    while let Some(line) = lines.next() {
        let Some(command) = line.trim().strip_prefix("$ hyperturan ") else {
            continue;
        };
        let args: Vec<String> = command.split_whitespace().map(str::to_string).collect();
        let mut expected = String::new();
        while let Some(&next) = lines.peek() {
            let trimmed = next.trim();
            if trimmed.is_empty() || trimmed.starts_with("$") || trimmed.starts_with("```") {
                break;
            }
            expected.push_str(trimmed);
            lines.next();
        }
        examples.push((args, expected));
    }
    assert!(
        examples.len() >= 5,
        "README documents only {} runnable examples",
        examples.len()
    );
    for (args, expected) in examples {
        let arg_refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&arg_refs);
        let mut got = stdout_json(&out);
        let mut want: Value = serde_json::from_str(&expected).unwrap_or_else(|e| {
            panic!("README example output for {args:?} is not JSON ({e}): {expected:?}")
        });
        strip_volatile(&mut got);
        strip_volatile(&mut want);
        assert_eq!(got, want, "README example diverged: hyperturan {args:?}");
    }
}
