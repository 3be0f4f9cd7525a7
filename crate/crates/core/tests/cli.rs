use std::path::Path;
use std::process::{Command, Output};

fn kecs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kecs"))
        .args(args)
        .env_remove("KECS_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn gen_named(dir: &Path, name: &str) -> String {
    let path = dir.join(format!("{}.el", name.replace([':', ','], "_")));
    let p = path.to_str().unwrap().to_string();
    let o = kecs(&["gen", "--model", "named", "--name", name, "-o", &p]);
    assert!(o.status.success());
    p
}

#[test]
fn solve_k33_with_flow() {
    let dir = tempfile::tempdir().unwrap();
    let k33 = gen_named(dir.path(), "k33");
    let o = kecs(&["solve", "-i", &k33, "-k", "2", "--method", "flow"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("nu=6 "));
}

#[test]
fn bipartite_method_on_odd_cycle_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let fig = gen_named(dir.path(), "figure1");
    for m in ["flow", "augment"] {
        let o = kecs(&["solve", "-i", &fig, "-k", "2", "--method", m]);
        assert_eq!(o.status.code(), Some(2));
        assert!(String::from_utf8_lossy(&o.stderr).contains("--method oracle"));
    }
    let o = kecs(&["solve", "-i", &fig, "-k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("nu=5 "));
}

#[test]
fn concavity_on_two_triangles_is_informational() {
    let dir = tempfile::tempdir().unwrap();
    let fig = gen_named(dir.path(), "figure1");
    let o = kecs(&["verify", "-i", &fig, "--rules", "concavity", "--method", "oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("informational"));
}

#[test]
fn bipartite_midpoint_search_is_clean() {
    let o = kecs(&["search", "--class", "bipartite", "--max-n", "6", "--rules", "midpoint"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("theorem_violations=0 counterexamples=0"));
}

#[test]
fn conjecture_searches_complete() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("nb.report.jsonl");
    let r = report.to_str().unwrap();
    let o = kecs(&[
        "search",
        "--class",
        "nearly-bipartite",
        "--max-n",
        "6",
        "--rules",
        "conj1",
        "-o",
        r,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("counterexamples=0"));
    let o = kecs(&["verify", "--replay", r]);
    assert_eq!(o.status.code(), Some(0));
    let o = kecs(&["search", "--class", "all", "--max-n", "5", "--rules", "conj2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn replay_confirms_and_catches_forgery() {
    let dir = tempfile::tempdir().unwrap();
    // Non-bipartite graphs violate concavity; those reports are informational.
    let report = dir.path().join("c.report.jsonl");
    let r = report.to_str().unwrap();
    let o = kecs(&[
        "search",
        "--class",
        "all",
        "--max-n",
        "6",
        "--rules",
        "concavity",
        "-o",
        r,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(!text.is_empty());
    let o = kecs(&["verify", "--replay", r]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("MISMATCH"));

    let forged = text.replacen("\"lhs\":", "\"lhs\":1", 1);
    std::fs::write(&report, forged).unwrap();
    let o = kecs(&["verify", "--replay", r]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH"));
}

#[test]
fn json_output_is_independent_of_jobs() {
    let run = |jobs: &str| {
        let o = kecs(&[
            "search",
            "--class",
            "all",
            "--max-n",
            "4",
            "--max-mult",
            "2",
            "--rules",
            "concavity,conj2",
            "--jobs",
            jobs,
            "--json",
        ]);
        assert_eq!(o.status.code(), Some(0));
        stdout(&o)
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    let v: serde_json::Value = serde_json::from_str(&one).unwrap();
    assert_eq!(v["theorem_violations"], 0);
}

#[test]
fn seeded_runs_are_reproducible() {
    let run = |seed: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_kecs"))
            .args([
                "search",
                "--class",
                "nearly-bipartite",
                "--max-n",
                "7",
                "--samples",
                "30",
                "--json",
            ])
            .env("KECS_SEED", seed)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        stdout(&o)
    };
    let a = run("5");
    assert_eq!(a, run("5"));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["seed"], 5);
    let g1 = stdout(&kecs(&["gen", "--model", "random", "-n", "7", "--seed", "3"]));
    assert_eq!(
        g1,
        stdout(&kecs(&["gen", "--model", "random", "-n", "7", "--seed", "3"]))
    );
    assert!(g1.starts_with("c random n=7 p=0.5 max_mult=1 seed=3\np el 7 "));
}

#[test]
fn certificates_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("p.cert.json");
    let c = cert.to_str().unwrap();
    let o = kecs(&["solve", "--named", "petersen", "-k", "2", "-o", c, "--cross-check"]);
    assert_eq!(o.status.code(), Some(0));
    let o = kecs(&["verify", "--cert", c]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("nu=9"));

    let text = std::fs::read_to_string(&cert).unwrap();
    std::fs::write(&cert, text.replacen("\"nu\": 9", "\"nu\": 10", 1)).unwrap();
    let o = kecs(&["verify", "--cert", c]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("VIOLATION"));
}

#[test]
fn oracle_budget_exhaustion_exits_three() {
    let o = kecs(&["solve", "--named", "petersen", "-k", "3", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("exact=false"));
    let o = kecs(&["spectrum", "--named", "petersen", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn spectrum_json() {
    let o = kecs(&["spectrum", "--named", "figure1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["spectrum"], serde_json::json!([0, 3, 5, 7]));
}

#[test]
fn graph6_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.g6");
    std::fs::write(&path, "DQc\n").unwrap();
    let o = kecs(&["spectrum", "-i", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&path, "DQ\n").unwrap();
    let o = kecs(&["spectrum", "-i", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(kecs(&["solve", "--bogus"]).status.code(), Some(2));
    assert_eq!(kecs(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        kecs(&["solve", "-i", "/nonexistent.el", "-k", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        kecs(&["search", "--class", "all", "--max-n", "9"]).status.code(),
        Some(2)
    );
    assert_eq!(
        kecs(&["verify", "--named", "k4", "--rules", "nonsense"]).status.code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("loop.el");
    std::fs::write(&path, "p el 3 1\ne 1 1\n").unwrap();
    let o = kecs(&["solve", "-i", path.to_str().unwrap(), "-k", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("loop"));
    assert_eq!(kecs(&["--help"]).status.code(), Some(0));
}

#[test]
fn self_test_paths() {
    let o = kecs(&["self-test", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 10);
    let o = kecs(&["self-test"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("PASS").count(), 10);
    let o = kecs(&["self-test", "--inject-fault", "--only", "cubic-bound"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL"));
}
