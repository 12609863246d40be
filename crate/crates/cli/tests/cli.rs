use std::f64::consts::PI;
use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schurtree")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_p4_reports_fed_holds() {
    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("p4.txt");
    fs::write(&tree, "4\n0 1\n1 2\n2 3\n").unwrap();
    let json = dir.path().join("report.json");
    let o = run(&["analyze", "--in", tree.to_str().unwrap(), "--json", json.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["fed"], "holds");
    assert_eq!(v["extrema"]["max"].as_array().unwrap().len(), 1);
}

#[test]
fn generated_path_has_closed_form_connectivity() {
    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("p5.txt");
    let dot = dir.path().join("p5.dot");
    let o = run(&["gen", "--family", "path:5", "--out", tree.to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(fs::read_to_string(&dot).unwrap().contains("--"));
    let o = run(&["analyze", "--in", tree.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let a = v["a"].as_f64().unwrap();
    assert!((a - (2.0 - 2.0 * (PI / 5.0).cos())).abs() < 1e-9, "a = {a}");
}

#[test]
fn invocation_line_carries_the_seed() {
    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("r.txt");
    let o = run(&["gen", "--family", "random:12", "--out", tree.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).lines().next().unwrap().ends_with("--seed 0"));
}

#[test]
fn random_census_is_byte_identical_across_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (i, jobs) in ["4", "4", "1"].iter().enumerate() {
        let csv = dir.path().join(format!("c{i}.csv"));
        let o = run(&["census", "--random", "200", "--size", "20", "--seed", "7", "--jobs", jobs, "--csv", csv.to_str().unwrap()]);
        assert!(o.status.success());
        outputs.push(fs::read(&csv).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
    assert_eq!(String::from_utf8_lossy(&outputs[0]).lines().count(), 201);
}

#[test]
fn bounds_table_contains_oracle_ratios() {
    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("t.txt");
    let o = run(&["gen", "--family", "caterpillar:1,0,0,0,0,1", "--out", tree.to_str().unwrap()]);
    assert!(o.status.success());
    let o = run(&["bounds", "--in", tree.to_str().unwrap(), "--path", "0,1,2,3,4,5", "--mode", "norm"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.ends_with(",true")), "{text}");
}

#[test]
fn rose_sweep_prints_threshold() {
    let o = run(&["rose", "--l", "3", "--r", "7", "--sweep-t", "3..8"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("first t with the glue-side extremum at a star leaf: 3"));
}

#[test]
fn verify_small_suite_passes() {
    let o = run(&["verify", "--suite", "fiedler", "--max-n", "5", "--jobs", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["pass"], true);
    }
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "--in", "x.txt"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--in", "/nonexistent/tree.txt"]).status.code(), Some(2));
}
