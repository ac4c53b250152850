use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn rainbow(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rainbow"))
        .args(args)
        .current_dir(dir)
        .env_remove("RAINBOW_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// 4-cycle 0-1-2-3 where 01 and 12 share colour 0, plus chord 02.
const SQUARE: &str = "4 5\n0 1 0\n1 2 0\n2 3 1\n3 0 2\n0 2 3\n";

#[test]
fn find_then_verify_two_clique_instance() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let gen = rainbow(
        &["generate", "--family", "two-clique-like", "--n", "16", "--gamma", "1/20", "--colouring", "bounded", "--mu", "1/8", "--seed", "5", "--out", "g.txt"],
        d,
    );
    assert_eq!(gen.status.code(), Some(0), "{}", String::from_utf8_lossy(&gen.stderr));
    let find = rainbow(&["find", "--input", "g.txt", "--out", "h.txt", "--report", "r.json", "--report-beta", "--mu", "1/8"], d);
    assert_eq!(find.status.code(), Some(0), "{}", String::from_utf8_lossy(&find.stderr));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("r.json")).unwrap()).unwrap();
    assert_eq!(report["found"], true);
    assert_eq!(report["bounded"], true);
    let verify = rainbow(&["verify", "--input", "g.txt", "--cycle", "h.txt"], d);
    assert_eq!(verify.status.code(), Some(0));
    assert_eq!(stdout(&verify).trim(), "OK");
}

#[test]
fn verify_names_the_violated_requirement() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("g.txt"), SQUARE).unwrap();
    fs::write(d.join("repeat.txt"), "0 1 2 3\n").unwrap();
    fs::write(d.join("chord.txt"), "0 2 1 3\n").unwrap();
    let o = rainbow(&["verify", "--input", "g.txt", "--cycle", "repeat.txt"], d);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL rainbow:"), "{}", stdout(&o));
    let o = rainbow(&["verify", "--input", "g.txt", "--cycle", "chord.txt"], d);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL hamilton:"), "{}", stdout(&o));
}

#[test]
fn hamilton_and_switchings_on_a_small_graph() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("g.txt"), SQUARE).unwrap();
    fs::write(d.join("z.txt"), "0 1\n").unwrap();
    let o = rainbow(&["hamilton", "--input", "g.txt", "--require", "z.txt"], d);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).split_whitespace().count(), 4);
    fs::write(d.join("h.txt"), "0 1 2 3\n").unwrap();
    let o = rainbow(&["switchings", "--input", "g.txt", "--cycle", "h.txt", "--edge", "0"], d);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim().parse::<usize>().is_ok());
}

#[test]
fn counterexample_has_no_rainbow_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let gen = rainbow(&["generate", "--family", "counterexample", "--n", "12", "--k", "2", "--out", "g.txt"], d);
    assert_eq!(gen.status.code(), Some(0));
    let o = rainbow(&["find", "--input", "g.txt", "--max-steps", "2000", "--restarts", "2", "--report", "r.json"], d);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "NONE");
}

#[test]
fn empty_experiment_plan_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("plan.json"), r#"{"families":[],"mu_grid":["1/4"],"seeds":{"start":0,"end":1},"output":"out"}"#).unwrap();
    let o = rainbow(&["experiment", "--plan", "plan.json"], d);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn experiment_writes_tables() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let plan = r#"{"families":[{"family":"complete","n":8,"colouring":null,"seed":0}],
        "mu_grid":["1/4"],"seeds":{"start":0,"end":2},"output":"out"}"#;
    fs::write(d.join("plan.json"), plan).unwrap();
    let o = rainbow(&["--threads", "1", "experiment", "--plan", "plan.json"], d);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(d.join("out/rows.csv").exists() && d.join("out/summary.csv").exists());
}

#[test]
fn berge_on_complete_hypergraph_and_split_halves() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let n = 8;
    let mut full = Vec::new();
    let mut split = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                full.push(format!("{a} {b} {c}"));
                if (a < 4) == (c < 4) {
                    split.push(format!("{a} {b} {c}"));
                }
            }
        }
    }
    fs::write(d.join("full.txt"), format!("{n} {} 3\n{}\n", full.len(), full.join("\n"))).unwrap();
    fs::write(d.join("split.txt"), format!("{n} {} 3\n{}\n", split.len(), split.join("\n"))).unwrap();
    let o = rainbow(&["berge", "--input", "full.txt"], d);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).split_whitespace().count(), 2 * n);
    let o = rainbow(&["berge", "--input", "split.txt", "--max-steps", "2000", "--restarts", "2"], d);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "NONE");
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(rainbow(&["find", "--no-such-flag"], dir.path()).status.code(), Some(2));
    assert_eq!(rainbow(&["verify", "--input", "missing.txt", "--cycle", "missing.txt"], dir.path()).status.code(), Some(2));
}

#[test]
fn seed_env_var_is_the_default_seed() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_rainbow"));
        cmd.args(["generate", "--family", "random-dirac", "--n", "14"]).args(extra).current_dir(d).env_remove("RAINBOW_SEED");
        if let Some(s) = env {
            cmd.env("RAINBOW_SEED", s);
        }
        cmd.output().unwrap().stdout
    };
    assert_eq!(run(Some("42"), &[]), run(None, &["--seed", "42"]));
}
