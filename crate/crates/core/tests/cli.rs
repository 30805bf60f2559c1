use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_tensortrack");

const QUARTIC: &str = "rank 3\npairs 2\nedge 0 1 1\nedge 0 2 2\nedge 1 1 1\nedge 1 2 2\nedge 2 1 2\nedge 2 2 1\n";

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("TENSORTRACK_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn documented_examples() {
    let o = run(&["beta", "--model", "tensor"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "a=1 b=1 beta2=-2*pi^2 (-19.739208802178716)\n");
    let o = run(&["enumerate", "--rank", "3", "--pairs", "2"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "Z_3(2) = 3\n"));
    let o = run(&["melons", "--rank", "4", "--pairs", "3"]);
    assert_eq!(stdout(&o), "melons(k=4, p=3) = 10\n");
}

#[test]
fn exit_codes_and_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.gct");
    let o = run(&["degree", "--input", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing.gct"));

    let o = run(&["beta", "--model", "tensor", "--frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o).lines().count(), 1, "{}", stderr(&o));

    let bad = write(dir.path(), "bad.gct", "rank 2\npairs 1\nedge 0 1 1\nedge 1 1 3\n");
    let o = run(&["melonic", "--input", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("input error"));

    let o = run(&["enumerate", "--rank", "4", "--pairs", "6", "--max-space", "1000"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("resource limit"));

    let o = run(&["flow", "--model", "vector", "--g0", "0.1", "--tmax", "10", "--steps", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("pole"));

    let o = run(&["divsum", "--grid", "4,8,16", "--out", "/nonexistent-dir/s.csv"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("write error"));
}

#[test]
fn help_documents_every_flag() {
    let flags: &[(&str, &[&str])] = &[
        ("enumerate", &["--rank", "--pairs", "--emit", "--max-space"]),
        ("degree", &["--input"]),
        ("melonic", &["--input"]),
        ("melons", &["--rank", "--pairs"]),
        ("powercount", &["--model", "--max-vertices", "--out"]),
        ("beta", &["--model"]),
        ("flow", &["--model", "--g0", "--tmax", "--steps", "--out"]),
        ("divsum", &["--mass-squared", "--grid", "--out"]),
        ("moment", &["--input", "--n-dim", "--mc", "--seed"]),
        ("export-dot", &["--input", "--out"]),
    ];
    for (cmd, fs) in flags {
        let o = run(&[cmd, "--help"]);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        let text = stdout(&o);
        for f in *fs {
            assert!(text.contains(f), "{cmd} --help lacks {f}");
        }
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn manifests_replay_bit_identically() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let o = run(&["divsum", "--grid", "8,16,32", "--mass-squared", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let data = std::fs::read(&out).unwrap();
    assert!(data.starts_with(b"N,S\n"));
    let manifest: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("s.csv.manifest")).unwrap()).unwrap();
    assert_eq!(manifest["subcommand"], "divsum");
    assert_eq!(manifest["parameters"]["mass_squared"], 2.0);
    assert!(manifest["wall_time_seconds"].is_number() && manifest["version"].is_string());

    std::fs::remove_file(&out).unwrap();
    let argv: Vec<String> = manifest["argv"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
    let replay = Command::new(BIN).args(&argv[1..]).output().unwrap();
    assert_eq!(replay.status.code(), Some(0));
    assert_eq!(std::fs::read(&out).unwrap(), data);
}

#[test]
fn flow_file_has_header_and_fixed_digits() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.csv");
    let o = run(&["flow", "--model", "tensor", "--g0", "0.01", "--tmax", "2", "--steps", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,g"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0], "0,0.010000000000000000");
    assert!(!text.contains('\r'));
    assert!(dir.path().join("g.csv.manifest").exists());
}

#[test]
fn enumerate_emits_gct_files() {
    let dir = tempfile::tempdir().unwrap();
    let emit = dir.path().join("forms");
    let o = run(&["enumerate", "--rank", "3", "--pairs", "2", "--emit", emit.to_str().unwrap()]);
    assert_eq!(stdout(&o), "Z_3(2) = 3\n");
    let mut gct: Vec<_> = std::fs::read_dir(&emit).unwrap().map(|e| e.unwrap().path()).filter(|p| p.extension().is_some_and(|e| e == "gct")).collect();
    gct.sort();
    assert_eq!(gct.len(), 3);
    for p in &gct {
        let g = tensortrack::graph::parse_gct(&std::fs::read_to_string(p).unwrap()).unwrap();
        assert_eq!(p.file_stem().unwrap().to_str().unwrap(), g.canonical_form().content_hash());
        let mut m = p.as_os_str().to_owned();
        m.push(".manifest");
        assert!(Path::new(&m).exists());
    }
}

#[test]
fn moment_and_thread_count_independence() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "q.gct", QUARTIC);
    let args = ["moment", "--input", &input, "--n-dim", "3", "--mc", "4000", "--seed", "9"];
    let outputs: Vec<String> = ["1", "2", "5"]
        .iter()
        .map(|t| stdout(&Command::new(BIN).args(args).env("TENSORTRACK_THREADS", t).output().unwrap()))
        .collect();
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    assert!(outputs[0].contains("polynomial: N^5 + N^4"));
    assert!(outputs[0].contains("value at N=3: 324"));
    assert!(outputs[0].contains("seed 9"));

    let scan = |t: &str| stdout(&Command::new(BIN).args(["powercount", "--model", "matrix", "--max-vertices", "3"]).env("TENSORTRACK_THREADS", t).output().unwrap());
    assert_eq!(scan("1"), scan("4"));
}

#[test]
fn degree_melonic_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "q.gct", QUARTIC);
    let o = run(&["degree", "--input", &input]);
    assert_eq!(stdout(&o), "jacket 0-1-2 genus 0\nomega = 0\n");
    let o = run(&["melonic", "--input", &input]);
    assert!(stdout(&o).starts_with("melonic: yes\nstep 1: remove"));
    let out = dir.path().join("q.dot");
    let o = run(&["export-dot", "--input", &input, "--canonical", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let dot = std::fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("graph colored {") && dot.matches(" -- ").count() == 6);
}
