use std::path::Path;
use std::process::{Command, Output};

use rainbow_core::analysis::recognize_f_family;
use rainbow_core::GraphCollection;

fn rainbow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rainbow")).args(args).env_remove("RAINBOW_BUDGET").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen_file(dir: &Path, name: &str, args: &[&str]) -> std::path::PathBuf {
    let out = dir.join(name);
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend(["--out", path_str(&out)]);
    let o = rainbow(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn gen_writes_instance_and_spec() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen_file(dir.path(), "f6.txt", &["--family", "f", "--n", "7", "--m", "6", "--seed", "1"]);
    let coll = GraphCollection::parse(&std::fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!((coll.n(), coll.m()), (7, 6));
    assert!(recognize_f_family(&coll).is_some());
    let spec: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("f6.txt.spec.json")).unwrap()).unwrap();
    assert_eq!(spec["family"]["kind"], "f_family");
    assert_eq!(spec["seed"], 1);
}

#[test]
fn gen_random_meets_degree() {
    let o = rainbow(&["gen", "--family", "random", "--n", "7", "--m", "6", "--min-degree", "4", "--seed", "2"]);
    assert_eq!(code(&o), 0);
    let coll = GraphCollection::parse(&stdout(&o)).unwrap();
    assert!(coll.min_degree() >= 4);
}

#[test]
fn gen_is_deterministic() {
    let args = ["gen", "--family", "random", "--n", "9", "--seed", "11"];
    assert_eq!(rainbow(&args).stdout, rainbow(&args).stdout);
}

#[test]
fn infeasible_and_bad_usage_exit_2() {
    let o = rainbow(&["gen", "--family", "f", "--n", "5", "--m", "4"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("infeasible"));
    assert_eq!(code(&rainbow(&["gen", "--family", "shape", "--shape", "nope", "--n", "7"])), 2);
    assert_eq!(code(&rainbow(&["verify", "--campaign", "nope", "--n", "7"])), 2);
    assert_eq!(code(&rainbow(&["check", "--in", "/nonexistent/file.txt"])), 2);
    assert_eq!(code(&rainbow(&["frobnicate"])), 2);
}

#[test]
fn check_reports_failing_triple_for_exceptional_family() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen_file(dir.path(), "f6.txt", &["--family", "f", "--n", "7", "--seed", "1"]);
    let cert = dir.path().join("cert.json");
    let o = rainbow(&["check", "--in", path_str(&f), "--cert", path_str(&cert)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("failing triple"));
    let c: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(c["verdict"], "fails");
    assert_eq!(c["failure"]["k"], 4);
}

#[test]
fn check_complete_collection_holds() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("k5.txt");
    let mut text = String::from("5 4\n");
    for i in 0..4 {
        text += &format!("graph {i}\n");
        for u in 0..5 {
            for v in u + 1..5 {
                text += &format!("{u} {v}\n");
            }
        }
        text += "end\n";
    }
    std::fs::write(&p, text).unwrap();
    assert_eq!(code(&rainbow(&["check", "--in", path_str(&p)])), 0);
}

#[test]
fn check_single_query_prints_path() {
    let dir = tempfile::tempdir().unwrap();
    let r = gen_file(dir.path(), "r.txt", &["--n", "7", "--m", "6", "--min-degree", "4", "--seed", "2"]);
    let o = rainbow(&["check", "--in", path_str(&r), "--pair", "0", "3", "--k", "5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("rainbow 5-path 0 -> 3"));
}

#[test]
fn budget_env_var_makes_search_inconclusive() {
    let dir = tempfile::tempdir().unwrap();
    let r = gen_file(dir.path(), "r.txt", &["--n", "7", "--seed", "2"]);
    let o = Command::new(env!("CARGO_BIN_EXE_rainbow"))
        .args(["check", "--in", path_str(&r)])
        .env("RAINBOW_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn classify_recognizes_structures() {
    let dir = tempfile::tempdir().unwrap();
    let class = |args: &[&str], name: &str| {
        let f = gen_file(dir.path(), name, args);
        let o = rainbow(&["classify", "--in", path_str(&f)]);
        assert_eq!(code(&o), 0);
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        (v["class"].as_str().unwrap().to_string(), v["case"].as_str().map(String::from))
    };
    assert_eq!(class(&["--family", "f", "--n", "7"], "f.txt").0, "f_family");
    assert_eq!(class(&["--family", "two-cliques", "--n", "6"], "t.txt").0, "two_cliques");
    assert_eq!(class(&["--family", "join-partition", "--n", "8"], "j.txt").0, "join_partition");
    assert_eq!(class(&["--n", "9", "--seed", "5"], "r.txt"), ("none".into(), Some("(i)".into())));
}

#[test]
fn verify_is_reproducible_modulo_wall_time() {
    let args = ["verify", "--campaign", "dichotomy", "--n", "5,7", "--trials", "10", "--seed", "7"];
    let strip = |o: Output| {
        assert_eq!(code(&o), 0);
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["wall_time_ms"] = 0.into();
        v
    };
    let a = strip(rainbow(&args));
    assert_eq!(a["pass"], 20);
    let mut with_jobs = args.to_vec();
    with_jobs.extend(["--jobs", "2"]);
    assert_eq!(a, strip(rainbow(&with_jobs)));
    assert_eq!(a, strip(rainbow(&args)));
}

#[test]
fn verify_accepts_flag_alias_and_trial_seed() {
    let o = rainbow(&["verify", "--theorem", "five-vertex", "--n", "5", "--trial-seed", "42"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], 1);
    assert_eq!(code(&rainbow(&["verify", "--campaign", "five-vertex", "--n", "5,7", "--trial-seed", "1"])), 2);
}

#[test]
fn verify_writes_report_and_fails_when_exhausted() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = rainbow(&[
        "verify",
        "--campaign",
        "ham-connected",
        "--n",
        "9",
        "--trials",
        "2",
        "--budget",
        "1",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(code(&o), 3);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["inconclusive"], 2);
    let rerun = v["failures"][0]["reproducer"].as_str().unwrap();
    assert!(rerun.starts_with("rainbow verify --campaign ham-connected --n 9 --trial-seed "));
    let args: Vec<&str> = rerun.split_whitespace().skip(1).collect();
    assert_eq!(code(&rainbow(&args)), 3);
}

#[test]
fn replay_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str], name: &str| {
        let f = gen_file(dir.path(), name, args);
        let o = rainbow(&["replay", "--in", path_str(&f)]);
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        (code(&o), v["verdict"].as_str().unwrap().to_string(), v["discrepancy_count"].as_u64().unwrap())
    };
    assert_eq!(run(&["--n", "7", "--seed", "3"], "r.txt"), (0, "constructed".into(), 0));
    assert_eq!(run(&["--family", "f", "--n", "7"], "f.txt"), (0, "exceptional".into(), 0));
    assert_eq!(run(&["--n", "6", "--seed", "3"], "e.txt"), (0, "delegated".into(), 0));
}
