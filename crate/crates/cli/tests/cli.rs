use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn maoea(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maoea")).args(args).output().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn refpoints_writes_the_simplex_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = maoea(&["refpoints", "--m", "3", "--divisions", "2", "--out", p(&out)]);
    assert!(o.status.success());
    let text = fs::read_to_string(&out).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 6);
    for r in &rows {
        assert_eq!(r.len(), 3);
        assert!((r.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
    let o = maoea(&[
        "refpoints", "--m", "3", "--divisions", "2,1", "--ideal", "0,0,0", "--nadir", "2,2,2",
        "--out", p(&out),
    ]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 9);
}

#[test]
fn metric_prints_the_indicator() {
    let dir = tempfile::tempdir().unwrap();
    let front = dir.path().join("f.csv");
    let reference = dir.path().join("r.csv");
    let point = dir.path().join("p.csv");
    fs::write(&front, "0,1\n1,0\n").unwrap();
    fs::write(&reference, "0,1\n0.5,0.5\n1,0\n").unwrap();
    fs::write(&point, "2,2\n").unwrap();
    let value = |args: &[&str]| -> f64 {
        let o = maoea(args);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        String::from_utf8(o.stdout).unwrap().trim().parse().unwrap()
    };
    let igd = value(&["metric", "--kind", "igd", "--front", p(&front), "--reference", p(&reference)]);
    assert!((igd - 0.5f64.sqrt() / 3.0).abs() < 1e-10);
    let plus = value(&["metric", "--kind", "igdplus", "--front", p(&front), "--reference", p(&reference)]);
    assert!((plus - 0.5 / 3.0).abs() < 1e-10);
    let hv = value(&["metric", "--kind", "hv", "--front", p(&front), "--reference", p(&point)]);
    assert!((hv - 3.0).abs() < 1e-12);
    let mc = value(&[
        "metric", "--kind", "hv", "--front", p(&front), "--reference", p(&point), "--samples", "200000",
    ]);
    // Sampled over [0, 2]^2; the front covers 3 of its 4 units.
    assert!((mc - 3.0).abs() < 0.05, "{mc}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = maoea(&["run", "--problem", "dtlz2", "--m", "3", "--budget", "2000", "--seed", "1", "--out", p(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    let o = maoea(&["run", "--problem", "nope", "--m", "3", "--budget", "2000", "--seed", "1", "--out", p(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
    let o = maoea(&["metric", "--kind", "igd", "--front", "/nonexistent/f.csv", "--reference", "/nonexistent/r.csv"]);
    assert_eq!(o.status.code(), Some(3));
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"problems": [], "budget": 10, "out": "x"}"#).unwrap();
    assert_eq!(maoea(&["experiment", "--spec", p(&bad)]).status.code(), Some(2));
}

#[test]
fn run_outputs_are_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = maoea(&["run", "--problem", "dtlz2", "--m", "3", "--budget", "3000", "--seed", "9", "--out", p(d.path())]);
        assert!(o.status.success());
    }
    for name in ["run.json", "trajectory.csv"] {
        assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap());
    }
    let traj = fs::read_to_string(a.path().join("trajectory.csv")).unwrap();
    assert!(traj.starts_with("generation,evaluations,igd,"));
    assert!(traj.lines().count() > 2);
}

#[test]
fn nadir_and_compare() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("n.json");
    let o = maoea(&["nadir", "--problem", "dtlz2", "--m", "3", "--budget", "30000", "--seed", "0", "--out", p(&out)]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["extreme_points"].as_array().unwrap().len(), 3);
    assert!(v["evaluations"].as_u64().unwrap() <= 30_000);

    let spec = dir.path().join("spec.json");
    let exp = dir.path().join("exp");
    fs::write(
        &spec,
        format!(r#"{{"problems": [{{"id": "dtlz2", "m": 3}}], "runs": 3, "budget": 2000, "out": {:?}, "baseline": true}}"#, p(&exp)),
    )
    .unwrap();
    assert!(maoea(&["experiment", "--spec", p(&spec)]).status.success());
    let cell = exp.join("dtlz2_m3");
    let o = maoea(&["compare", "--a", p(&cell.join("engine.csv")), "--b", p(&cell.join("baseline.csv"))]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "indicator,median_a,median_b,u,p_value,mark");
    assert_eq!(lines.len(), 4);
}
