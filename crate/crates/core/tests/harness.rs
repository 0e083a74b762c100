use std::fs;
use std::path::Path;

use maoea_core::harness::{
    nadir_experiment, read_cell_csv, run_experiment, summarize, write_cell_csv, CellRow,
    CellSpec, ExperimentSpec, Mark, NadirBenchSpec, INDICATORS,
};
use maoea_core::metrics::rank_sum_test;
use maoea_core::Error;

fn spec(out: &Path, runs: usize, baseline: bool) -> ExperimentSpec {
    let text = format!(
        r#"{{"problems": [{{"id": "dtlz2", "m": 3}}], "runs": {runs}, "budget": {{"3": 3000}},
            "seed": 11, "out": {out:?}, "baseline": {baseline}}}"#
    );
    ExperimentSpec::from_json(&text).unwrap()
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

#[test]
fn layout_and_reproducibility() {
    let dir = tempfile::tempdir().unwrap();
    let s = spec(dir.path(), 3, false);
    let summary = run_experiment(&s).unwrap();
    let cell = dir.path().join("dtlz2_m3");
    let mut names: Vec<String> = fs::read_dir(&cell)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        ["engine.csv", "engine_run0.json", "engine_run1.json", "engine_run2.json"]
    );
    let rows = read_cell_csv(&cell.join("engine.csv")).unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows.iter().map(|r| r.seed).collect::<Vec<_>>(), [11, 12, 13]);
    assert!(rows.iter().all(|r| r.igd.is_some() && r.hv.is_some()));
    assert_eq!(summary, summarize("dtlz2", 3, &rows, None).unwrap());

    let first = fs::read(dir.path().join("summary.csv")).unwrap();
    let again = tempfile::tempdir().unwrap();
    run_experiment(&spec(again.path(), 3, false)).unwrap();
    assert_eq!(first, fs::read(again.path().join("summary.csv")).unwrap());
    for name in &names {
        assert_eq!(
            fs::read(cell.join(name)).unwrap(),
            fs::read(again.path().join("dtlz2_m3").join(name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn cell_csv_round_trips_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let rows = vec![
        CellRow { run: 0, seed: 4, evaluations: 100, igd: Some(0.1 + 0.2), igd_plus: Some(1e-300), hv: None },
        CellRow { run: 1, seed: 5, evaluations: 100, igd: None, igd_plus: None, hv: Some(0.3333333333333333) },
    ];
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    write_cell_csv(&a, &rows).unwrap();
    let back = read_cell_csv(&a).unwrap();
    assert_eq!(back, rows);
    write_cell_csv(&b, &back).unwrap();
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn marks_follow_the_rank_sum_test() {
    let dir = tempfile::tempdir().unwrap();
    let summary = run_experiment(&spec(dir.path(), 6, true)).unwrap();
    let cell = dir.path().join("dtlz2_m3");
    let engine = read_cell_csv(&cell.join("engine.csv")).unwrap();
    let baseline = read_cell_csv(&cell.join("baseline.csv")).unwrap();
    assert_eq!(baseline.len(), 6);
    for name in INDICATORS {
        let mut a: Vec<f64> = engine.iter().map(|r| r.indicator(name).unwrap()).collect();
        let mut b: Vec<f64> = baseline.iter().map(|r| r.indicator(name).unwrap()).collect();
        let t = rank_sum_test(&a, &b).unwrap();
        let (ma, mb) = (median(&mut a), median(&mut b));
        let row = summary
            .iter()
            .find(|r| r.indicator == name && r.algorithm == "engine")
            .unwrap();
        assert_eq!(row.p_value, Some(t.p_value));
        let lower_better = name != "hv";
        let expected = if t.p_value >= 0.05 || ma == mb {
            Mark::Tie
        } else if (ma < mb) == lower_better {
            Mark::Better
        } else {
            Mark::Worse
        };
        assert_eq!(row.mark, Some(expected), "{name}");
    }
}

#[test]
fn unwritable_output_fails_before_running() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let s = spec(&blocker.join("out"), 2, false);
    let err = run_experiment(&s).unwrap_err();
    assert!(matches!(err, Error::Io(_)), "{err}");
    assert!(!err.is_config());
}

#[test]
fn bad_specs_are_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let mut s = spec(dir.path(), 2, false);
    s.problems.push(CellSpec { id: "dtlz2".into(), m: 5 });
    assert!(run_experiment(&s).unwrap_err().is_config());
    assert!(fs::read_dir(dir.path()).unwrap().next().is_none());
    assert!(ExperimentSpec::from_json(r#"{"problems": [], "budget": 1, "out": "x", "extra": 1}"#).is_err());
}

#[test]
fn nadir_bench_with_a_tiny_cap_is_exhausted() {
    let s = NadirBenchSpec {
        cells: vec![CellSpec { id: "dtlz2".into(), m: 8 }],
        seeds: 2,
        cap: 10,
        ..NadirBenchSpec::default()
    };
    let rows = nadir_experiment(&s).unwrap();
    assert_eq!(rows.len(), 2);
    for r in &rows {
        assert!(r.exhausted);
        assert!(r.error > 0.01);
        assert!(r.evaluations <= 8);
    }
    let s = NadirBenchSpec {
        cells: vec![CellSpec { id: "wfg4".into(), m: 3 }],
        ..NadirBenchSpec::default()
    };
    assert!(matches!(nadir_experiment(&s), Err(Error::Unsupported(_))));
}
