use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const COMMANDS: [&str; 6] = ["solve", "quiver", "dt", "barnes", "classical", "verify"];

fn examples() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn configs() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(examples())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    out.sort();
    out
}

fn stripq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stripq")).args(args).output().unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let out = stripq(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&run_ok(args)).unwrap()
}

fn temp_config(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("stripq-{}-{name}.json", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

/// Set `STRIPQ_BLESS=1` to rewrite the expected outputs.
#[test]
fn every_command_matches_golden_output() {
    let bless = std::env::var_os("STRIPQ_BLESS").is_some();
    let expected = examples().join("expected");
    let mut seen = 0;
    for cfg in configs() {
        let stem = cfg.file_stem().unwrap().to_str().unwrap().to_string();
        for cmd in COMMANDS {
            let got = run_ok(&[cmd, "--config", cfg.to_str().unwrap()]);
            let golden = expected.join(format!("{stem}.{cmd}.json"));
            if bless {
                std::fs::write(&golden, &got).unwrap();
            }
            let want = std::fs::read_to_string(&golden).unwrap_or_else(|_| panic!("missing {}", golden.display()));
            assert!(got == want, "{stem} {cmd} differs from {}", golden.display());
            seen += 1;
        }
    }
    assert!(seen >= 6 * COMMANDS.len());
}

#[test]
fn output_is_byte_identical_across_runs() {
    let cfg = examples().join("conifold_-1_1.json");
    for cmd in COMMANDS {
        for format in ["json", "tsv"] {
            let args = [cmd, "--config", cfg.to_str().unwrap(), "--format", format];
            assert_eq!(run_ok(&args), run_ok(&args), "{cmd} {format}");
        }
    }
}

#[test]
fn verify_passes_on_shipped_configs() {
    for cfg in configs() {
        let v = json(&["verify", "--config", cfg.to_str().unwrap()]);
        assert_eq!(v["passed"], Value::Bool(true), "{}", cfg.display());
        for p in v["properties"].as_array().unwrap() {
            assert_ne!(p["status"], "fail", "{} {}", cfg.display(), p["property"]);
        }
    }
}

#[test]
fn solve_c3_table() {
    let cfg = examples().join("c3_1_inf.json");
    let v = json(&["solve", "--config", cfg.to_str().unwrap()]);
    let rows = v["coefficients"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["coefficient"], "1");
    // c_1 = t^3/(1 − t)
    assert!(rows[1]["coefficient"].as_str().unwrap().starts_with("t^3 + t^4 + t^5"));
    assert_eq!(v["annihilated"], Value::Bool(true));
    let tsv = run_ok(&["solve", "--config", cfg.to_str().unwrap(), "--format", "tsv", "--x-order", "2"]);
    let lines: Vec<&str> = tsv.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[1], "0\t0\t1\texact");
}

#[test]
fn quiver_conifold_has_seven_nodes() {
    let cfg = examples().join("conifold_-1_inf.json");
    let v = json(&["quiver", "--config", cfg.to_str().unwrap()]);
    assert_eq!(v["node_count"], 7);
    assert_eq!(v["principal_diagonal"], 0);
    assert_eq!(v["matches_closed_form"], Value::Bool(true));
}

#[test]
fn out_flag_writes_file() {
    let cfg = examples().join("c3_-2_inf.json");
    let out = std::env::temp_dir().join(format!("stripq-{}-out.json", std::process::id()));
    let printed = run_ok(&["dt", "--config", cfg.to_str().unwrap()]);
    run_ok(&["dt", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), printed);
    std::fs::remove_file(out).unwrap();
}

#[test]
fn exit_codes() {
    let mixed = temp_config(
        "mixed",
        r#"{"geometry":{"alphas":["a1"],"betas":[0.3],"framing":0},"basepoint":"inf"}"#,
    );
    let out = stripq(&["solve", "--config", mixed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mixes symbolic"));

    let low = temp_config("low", r#"{"geometry":{"framing":-2},"basepoint":"1"}"#);
    let out = stripq(&["solve", "--config", low.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let out = stripq(&["solve"]);
    assert_eq!(out.status.code(), Some(2));
    let out = stripq(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    for p in [mixed, low] {
        std::fs::remove_file(p).unwrap();
    }
}
