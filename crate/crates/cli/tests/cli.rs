use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn gtkc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtkc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

const T1: &str = r#"{"chi":1,"n":2,"sets":[[[1,1],[2,2]]]}"#;
const UNSOLVABLE: &str = r#"{"chi":2,"n":2,"sets":[[[2,1]],[[2,2]],[[1,1]],[[2,2]]]}"#;

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = gtkc(&[
            "gen",
            "--chi",
            "2",
            "--n",
            "3",
            "--pairs",
            "2",
            "--seed",
            "5",
            "--out",
            path_str(p),
        ]);
        assert_eq!(code(&o), 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let t1 = dir.path().join("t1.json");
    fs::write(&t1, T1).unwrap();
    let o = gtkc(&["verify", path_str(&t1)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"]["agree"], true);
    assert_eq!(v["verdict"]["gt_solvable"], true);

    let bad = dir.path().join("u.json");
    fs::write(&bad, UNSOLVABLE).unwrap();
    let o = gtkc(&["verify", path_str(&bad)]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"]["gt_solvable"], false);
    assert_eq!(v["verdict"]["kcenter_within_threshold"], false);

    let broken = dir.path().join("broken.json");
    fs::write(&broken, r#"{"chi":1,"n":2,"sets":[[[3,1]]]}"#).unwrap();
    assert_eq!(code(&gtkc(&["verify", path_str(&broken)])), 2);
    assert_eq!(code(&gtkc(&["verify", "/nonexistent/instance.json"])), 2);
}

#[test]
fn tiny_budget_is_inconclusive() {
    let dir = tempfile::tempdir().unwrap();
    let t1 = dir.path().join("t1.json");
    fs::write(&t1, T1).unwrap();
    let o = gtkc(&["verify", path_str(&t1), "--budget-nodes", "1"]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn reduce_export_and_solve() {
    let dir = tempfile::tempdir().unwrap();
    let t1 = dir.path().join("t1.json");
    fs::write(&t1, T1).unwrap();
    let g = dir.path().join("g.json");
    assert_eq!(code(&gtkc(&["reduce", path_str(&t1), "--out", path_str(&g)])), 0);
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&g).unwrap()).unwrap();
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 37);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 42);

    let o = gtkc(&["solve-kcenter", path_str(&g), "--k", "5", "--radius", "8/1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["feasible"], true);
    let o = gtkc(&["solve-kcenter", path_str(&g), "--k", "5"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["optimum"]["cost"], "8/1");

    let d1 = gtkc(&["export", path_str(&t1), "--format", "dot"]);
    let d2 = gtkc(&["export", path_str(&t1), "--format", "dot"]);
    assert_eq!(code(&d1), 0);
    assert_eq!(d1.stdout, d2.stdout);
    assert!(String::from_utf8_lossy(&d1.stdout).starts_with("graph G {"));
    assert_eq!(code(&gtkc(&["export", path_str(&t1), "--format", "svg"])), 2);
}

#[test]
fn augment_and_solve_gt() {
    let dir = tempfile::tempdir().unwrap();
    let u = dir.path().join("u.json");
    fs::write(&u, UNSOLVABLE).unwrap();
    let a = dir.path().join("a.json");
    assert_eq!(code(&gtkc(&["augment", path_str(&u), "--out", path_str(&a)])), 0);
    let inst: serde_json::Value = serde_json::from_str(&fs::read_to_string(&a).unwrap()).unwrap();
    assert_eq!(inst["chi"], 2);
    assert!(inst["n"].as_u64().unwrap() > 2);
    let o = gtkc(&["solve-gt", path_str(&a)]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["solvable"], false);
}

#[test]
fn params_report_shape() {
    let dir = tempfile::tempdir().unwrap();
    let t1 = dir.path().join("t1.json");
    fs::write(&t1, T1).unwrap();
    let o = gtkc(&["params", path_str(&t1)]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["kappa"]["value"].as_u64().unwrap() >= 4);
    assert!(v["kappa"]["witness_radius"].as_str().unwrap().contains('/'));
    assert_eq!(v["hd"]["witness_hits_all"], true);
    assert!(v["doubling"]["passes_d"].is_u64());
    assert!(v["pathwidth"]["exact_tiny"].as_u64().unwrap() <= v["pathwidth"]["constructive_width"].as_u64().unwrap());

    let o = gtkc(&["params", path_str(&t1), "--budget-vertices", "10"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["hd"]["exact"].is_null());
    assert!(v["doubling"]["passes_d"].is_null());
}

#[test]
fn sweep_writes_deterministic_reports() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for d in [&a, &b] {
        let o = gtkc(&[
            "sweep",
            "--chi",
            "1",
            "--n",
            "2",
            "--seed",
            "0..3",
            "--out",
            path_str(d),
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    let sa = fs::read(a.join("summary.json")).unwrap();
    assert_eq!(sa, fs::read(b.join("summary.json")).unwrap());
    assert_eq!(fs::read_dir(a.join("instances")).unwrap().count(), 3);
    let table = fs::read_to_string(a.join("summary.txt")).unwrap();
    assert!(table.lines().nth(1).unwrap().split_whitespace().collect::<Vec<_>>()[..4] == ["1", "2", "3", "3"]);
}
