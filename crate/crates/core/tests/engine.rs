use maoea_core::engine::{run, run_random_baseline, EngineConfig};
use maoea_core::nadir::{estimate_extreme_point, nadir_error, run_dnpe, DnpeConfig};
use maoea_core::problems::problem_by_id;
use maoea_core::{Error, Problem, RandomSource};

fn small(seed: u64) -> EngineConfig {
    EngineConfig::new("dtlz2", 3, 8_000, seed)
}

#[test]
fn same_seed_gives_identical_records() {
    let a = run(&small(3)).unwrap().to_json().unwrap();
    let b = run(&small(3)).unwrap().to_json().unwrap();
    assert_eq!(a, b);
    let c = run(&small(4)).unwrap().to_json().unwrap();
    assert_ne!(a, c);
}

#[test]
fn budget_accounting_and_population_size() {
    let cfg = small(5);
    let r = run(&cfg).unwrap();
    let nadir = r.nadir.as_ref().unwrap();
    let offspring = cfg.variation.offspring_count(91) as u64;
    assert_eq!(r.final_population.len(), 91);
    assert!(r.evaluations <= cfg.total_eval_budget);
    assert!(r.evaluations + offspring > cfg.total_eval_budget);
    assert!(nadir.evaluations <= cfg.dnpe_budget());
    let g = &r.generations;
    assert_eq!(g[0].evaluations, nadir.evaluations + 91);
    for w in g.windows(2) {
        assert_eq!(w[1].evaluations, w[0].evaluations + offspring);
    }
    for s in g {
        assert_eq!(s.census.unwrap().iter().sum::<usize>(), 91);
        assert!(s.igd.is_some());
    }
    assert_eq!(g.last().unwrap().evaluations, r.evaluations);
}

#[test]
fn small_budget_truncates_nadir_estimation() {
    // 20% of 1200 is far below what the nadir search would like to spend.
    let cfg = EngineConfig::new("dtlz2", 3, 1_200, 1);
    assert_eq!(cfg.dnpe_budget(), 240);
    let r = run(&cfg).unwrap();
    assert!(r.generations.len() >= 2);
    assert!(r.evaluations <= 1_200);
}

#[test]
fn problems_without_a_known_front_still_run() {
    let r = run(&EngineConfig::new("wfg4", 3, 6_000, 2)).unwrap();
    assert_eq!(r.final_population.len(), 91);
    assert!(r.generations.iter().all(|g| g.igd.is_none()));
    assert!(r.nadir.unwrap().error.is_none());
}

#[test]
fn ideal_tracking_keeps_the_invariants() {
    let mut cfg = small(6);
    cfg.track_ideal = true;
    let r = run(&cfg).unwrap();
    assert_eq!(r.final_population.len(), 91);
    assert!(r.evaluations <= cfg.total_eval_budget);
    assert_eq!(r.to_json().unwrap(), run(&cfg).unwrap().to_json().unwrap());
}

#[test]
fn invalid_configs_fail_before_evaluating() {
    let mut cfg = small(1);
    cfg.population_size = Some(100);
    assert!(matches!(run(&cfg), Err(Error::Config(_))));
    let mut cfg = small(1);
    cfg.dnpe_budget_fraction = 1.5;
    assert!(matches!(run(&cfg), Err(Error::Config(_))));
    assert!(run(&EngineConfig::new("dtlz0", 3, 8_000, 1)).is_err());
}

#[test]
fn baseline_shape_and_determinism() {
    let cfg = small(7);
    let a = run_random_baseline(&cfg).unwrap();
    assert_eq!(a.final_population.len(), 91);
    assert_eq!(a.evaluations, cfg.total_eval_budget);
    assert!(a.nadir.is_none());
    let b = run_random_baseline(&cfg).unwrap();
    assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
}

#[test]
fn extreme_point_of_dtlz2_is_a_unit_vector() {
    let p = problem_by_id("dtlz2", 3).unwrap();
    let (nad, ideal) = (p.known_nadir().unwrap(), p.known_ideal().unwrap());
    let cfg = DnpeConfig::default();
    let a = estimate_extreme_point(&p, 0, &cfg, Some((&nad, &ideal)), &mut RandomSource::new(2)).unwrap();
    let y = a.best.objectives.values();
    assert!((y[0] - 1.0).abs() <= 0.01, "{y:?}");
    assert!(a.converged);
    assert!(a.evaluations <= cfg.budget_for(3));
    let b = estimate_extreme_point(&p, 0, &cfg, Some((&nad, &ideal)), &mut RandomSource::new(2)).unwrap();
    assert_eq!(a.best.objectives, b.best.objectives);
}

#[test]
fn dtlz2_report_has_a_near_zero_ideal() {
    let p = problem_by_id("dtlz2", 3).unwrap();
    let r = run_dnpe(&p, &DnpeConfig::default(), &mut RandomSource::new(4)).unwrap();
    assert!(r.ideal.values().iter().all(|v| *v <= 0.01), "{:?}", r.ideal);
    let e = nadir_error(r.nadir.values(), &[1.0; 3], &[0.0; 3]).unwrap();
    assert_eq!(Some(e), r.error);
    assert!(r.evaluations <= 99_999);
}

#[test]
fn tiny_cap_is_flagged_as_exhausted() {
    let p = problem_by_id("dtlz2", 8).unwrap();
    let cfg = DnpeConfig {
        per_extreme_eval_budget: Some(1),
        ..DnpeConfig::default()
    };
    let r = run_dnpe(&p, &cfg, &mut RandomSource::new(0)).unwrap();
    assert_eq!(r.evaluations, 8);
    assert!(r.exhausted);
    assert!(r.error.unwrap() > 0.01);
}
