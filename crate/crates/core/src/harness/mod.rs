//! Multi-seed experiments with JSON run records and CSV tables.
//!
//! Layout written by [`run_experiment`]:
//!
//! ```text
//! <out>/<problem>_m<m>/engine_run<i>.json
//! <out>/<problem>_m<m>/engine.csv
//! <out>/<problem>_m<m>/baseline_run<i>.json   (baseline enabled)
//! <out>/<problem>_m<m>/baseline.csv           (baseline enabled)
//! <out>/summary.csv
//! ```
//!
//! Run `i` of every cell uses seed `seed + i`.

mod tables;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::engine::{run, run_random_baseline, EngineConfig, RunRecord};
use crate::error::{Error, Result};
use crate::metrics::{hv_normalized, igd, HvOptions};
use crate::nadir::{run_dnpe, DnpeConfig, DEFAULT_TOTAL_CAP};
use crate::problems::{problem_by_id, sample_true_front, BenchmarkSpec};
use crate::random::RandomSource;
use crate::types::ObjectivePoint;
use crate::Problem;

pub use tables::{
    compare_cells, read_cell_csv, summarize, write_cell_csv, write_summary_csv, CellRow,
    Comparison, Mark, SummaryRow, INDICATORS,
};

/// Size of the analytic front sample the indicators are measured against.
pub const INDICATOR_FRONT_POINTS: usize = 5000;
/// Seed of that sample; fixed so every run of a cell is scored on the same points.
pub const INDICATOR_FRONT_SEED: u64 = 0x5eed;

fn default_runs() -> usize {
    30
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellSpec {
    pub id: String,
    pub m: usize,
}

/// One budget for every cell, or one per objective count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Budget {
    Fixed(u64),
    /// Keyed by the objective count written as a string, e.g. `{"3": 25000}`.
    PerM(BTreeMap<String, u64>),
}

impl Budget {
    pub fn for_m(&self, m: usize) -> Result<u64> {
        match self {
            Budget::Fixed(b) => Ok(*b),
            Budget::PerM(map) => map
                .get(&m.to_string())
                .copied()
                .ok_or_else(|| Error::Config(format!("no budget given for m = {m}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub problems: Vec<CellSpec>,
    #[serde(default = "default_runs")]
    pub runs: usize,
    pub budget: Budget,
    #[serde(default)]
    pub seed: u64,
    /// Keys merged over the default engine configuration of each cell.
    #[serde(default)]
    pub engine: Map<String, Value>,
    pub out: PathBuf,
    /// Also run the random-search baseline and compare against it.
    #[serde(default)]
    pub baseline: bool,
}

impl ExperimentSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("experiment spec: {e}")))
    }

    /// Engine configuration of one run; problem, m, budget and seed always
    /// come from the experiment, never from the overrides.
    pub fn engine_config(&self, cell: &CellSpec, run_index: usize) -> Result<EngineConfig> {
        let budget = self.budget.for_m(cell.m)?;
        let seed = self.seed + run_index as u64;
        let base = EngineConfig::new(&cell.id, cell.m, budget, seed);
        if self.engine.is_empty() {
            return Ok(base);
        }
        let mut value = serde_json::to_value(&base)?;
        merge(&mut value, &Value::Object(self.engine.clone()));
        let mut cfg: EngineConfig = serde_json::from_value(value)
            .map_err(|e| Error::Config(format!("engine overrides: {e}")))?;
        cfg.problem_id = cell.id.clone();
        cfg.m = cell.m;
        cfg.total_eval_budget = budget;
        cfg.seed = seed;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.problems.is_empty() {
            return Err(Error::Config("experiment has no problems".into()));
        }
        if self.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        for cell in &self.problems {
            if self.budget.for_m(cell.m)? == 0 {
                return Err(Error::Config(format!("budget for m = {} is zero", cell.m)));
            }
            self.engine_config(cell, 0)?.validate()?;
        }
        Ok(())
    }
}

fn merge(target: &mut Value, patch: &Value) {
    match (target, patch) {
        (Value::Object(t), Value::Object(p)) => {
            for (k, v) in p {
                match t.get_mut(k) {
                    Some(slot) if slot.is_object() && v.is_object() => merge(slot, v),
                    _ => {
                        t.insert(k.clone(), v.clone());
                    }
                }
            }
        }
        (t, p) => *t = p.clone(),
    }
}

pub fn cell_dir(out: &Path, cell: &CellSpec) -> PathBuf {
    out.join(format!("{}_m{}", cell.id, cell.m))
}

fn indicator_front(id: &str, m: usize) -> Option<Vec<ObjectivePoint>> {
    let spec = BenchmarkSpec::from_id(id, m).ok()?;
    let mut rng = RandomSource::new(INDICATOR_FRONT_SEED);
    sample_true_front(spec, INDICATOR_FRONT_POINTS, &mut rng).ok()
}

/// Indicator row of one finished run. IGD values are empty for problems
/// without an analytic front.
pub fn score(
    record: &RunRecord,
    run_index: usize,
    front: Option<&[ObjectivePoint]>,
) -> Result<CellRow> {
    let objs = record.final_objectives();
    let cfg = &record.config;
    let (igd_v, igd_plus) = match front {
        Some(f) => (Some(igd(f, &objs, false)?), Some(igd(f, &objs, true)?)),
        None => (None, None),
    };
    let hv = hv_normalized(
        &objs,
        &cfg.problem_id,
        cfg.m,
        HvOptions {
            seed: cfg.seed,
            ..HvOptions::default()
        },
    )?;
    Ok(CellRow {
        run: run_index,
        seed: cfg.seed,
        evaluations: record.evaluations,
        igd: igd_v,
        igd_plus,
        hv: Some(hv),
    })
}

fn write_record(path: &Path, record: &RunRecord) -> Result<()> {
    let mut text = record.to_json()?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

struct RunOutcome {
    cell: usize,
    engine: CellRow,
    baseline: Option<CellRow>,
}

/// Runs every cell `runs` times, writes the artifacts, and returns the summary.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<SummaryRow>> {
    spec.validate()?;
    let dirs: Vec<PathBuf> = spec.problems.iter().map(|c| cell_dir(&spec.out, c)).collect();
    for d in &dirs {
        fs::create_dir_all(d)?;
    }
    let fronts: Vec<Option<Vec<ObjectivePoint>>> = spec
        .problems
        .iter()
        .map(|c| indicator_front(&c.id, c.m))
        .collect();

    let jobs: Vec<(usize, usize)> = (0..spec.problems.len())
        .flat_map(|c| (0..spec.runs).map(move |r| (c, r)))
        .collect();
    let outcomes: Vec<RunOutcome> = jobs
        .into_par_iter()
        .map(|(c, r)| {
            let cfg = spec.engine_config(&spec.problems[c], r)?;
            let front = fronts[c].as_deref();
            let record = run(&cfg)?;
            write_record(&dirs[c].join(format!("engine_run{r}.json")), &record)?;
            let engine = score(&record, r, front)?;
            let baseline = if spec.baseline {
                let record = run_random_baseline(&cfg)?;
                write_record(&dirs[c].join(format!("baseline_run{r}.json")), &record)?;
                Some(score(&record, r, front)?)
            } else {
                None
            };
            Ok(RunOutcome {
                cell: c,
                engine,
                baseline,
            })
        })
        .collect::<Result<_>>()?;

    let mut summary = Vec::new();
    for (c, cell) in spec.problems.iter().enumerate() {
        let engine: Vec<CellRow> = outcomes
            .iter()
            .filter(|o| o.cell == c)
            .map(|o| o.engine.clone())
            .collect();
        write_cell_csv(&dirs[c].join("engine.csv"), &engine)?;
        let baseline: Option<Vec<CellRow>> = spec.baseline.then(|| {
            outcomes
                .iter()
                .filter(|o| o.cell == c)
                .filter_map(|o| o.baseline.clone())
                .collect()
        });
        if let Some(b) = &baseline {
            write_cell_csv(&dirs[c].join("baseline.csv"), b)?;
        }
        summary.extend(summarize(&cell.id, cell.m, &engine, baseline.as_deref())?);
    }
    write_summary_csv(&spec.out.join("summary.csv"), &summary)?;
    Ok(summary)
}

/// Settings of the nadir estimation benchmark.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NadirBenchSpec {
    pub cells: Vec<CellSpec>,
    pub seeds: usize,
    pub seed: u64,
    /// Total evaluation cap per estimation, split evenly over the axes
    /// (at least one evaluation per axis).
    pub cap: u64,
    pub dnpe: DnpeConfig,
}

impl Default for NadirBenchSpec {
    fn default() -> Self {
        let cell = |id: &str, m| CellSpec {
            id: id.into(),
            m,
        };
        let mut cells = Vec::new();
        for id in ["dtlz1", "dtlz2"] {
            for m in [8, 10, 15, 20] {
                cells.push(cell(id, m));
            }
        }
        cells.push(cell("wfg2", 3));
        cells.push(cell("wfg2", 8));
        Self {
            cells,
            seeds: 5,
            seed: 0,
            cap: DEFAULT_TOTAL_CAP,
            dnpe: DnpeConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NadirRow {
    pub problem: String,
    pub m: usize,
    pub seed: u64,
    pub evaluations: u64,
    pub error: f64,
    pub exhausted: bool,
}

/// Runs the nadir estimation with the error stop on every cell and seed.
/// Only problems with a known nadir are accepted.
pub fn nadir_experiment(spec: &NadirBenchSpec) -> Result<Vec<NadirRow>> {
    if spec.seeds == 0 {
        return Err(Error::Config("seeds must be at least 1".into()));
    }
    let mut jobs = Vec::new();
    for cell in &spec.cells {
        let p = problem_by_id(&cell.id, cell.m)?;
        if p.known_nadir().is_none() || p.known_ideal().is_none() {
            return Err(Error::Unsupported(format!("{} has no known nadir", cell.id)));
        }
        let per_axis = (spec.cap / cell.m as u64).max(1);
        for s in 0..spec.seeds {
            jobs.push((cell.clone(), per_axis, spec.seed + s as u64));
        }
    }
    jobs.into_par_iter()
        .map(|(cell, per_axis, seed)| {
            let p = problem_by_id(&cell.id, cell.m)?;
            let cfg = DnpeConfig {
                per_extreme_eval_budget: Some(per_axis),
                error_stop: true,
                ..spec.dnpe.clone()
            };
            let report = run_dnpe(&p, &cfg, &mut RandomSource::new(seed))?;
            Ok(NadirRow {
                problem: cell.id,
                m: cell.m,
                seed,
                evaluations: report.evaluations,
                error: report.error.expect("known nadir gives an error value"),
                exhausted: report.exhausted,
            })
        })
        .collect()
}

pub fn write_nadir_csv(path: &Path, rows: &[NadirRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["problem", "m", "seed", "evaluations", "error", "exhausted"])?;
    for r in rows {
        w.write_record([
            r.problem.clone(),
            r.m.to_string(),
            r.seed.to_string(),
            r.evaluations.to_string(),
            r.error.to_string(),
            r.exhausted.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_forms() {
        let s: Budget = serde_json::from_str("25000").unwrap();
        assert_eq!(s.for_m(3).unwrap(), 25000);
        let s: Budget = serde_json::from_str(r#"{"3": 100, "5": 200}"#).unwrap();
        assert_eq!(s.for_m(5).unwrap(), 200);
        assert!(s.for_m(8).is_err());
    }

    #[test]
    fn overrides_merge_but_keep_identity() {
        let spec = ExperimentSpec::from_json(
            r#"{"problems": [{"id": "dtlz2", "m": 3}], "runs": 2, "budget": 9000, "seed": 4,
                "engine": {"seed": 99, "dnpe": {"lambda": 50.0}, "subset_mode": "random"},
                "out": "x"}"#,
        )
        .unwrap();
        let cfg = spec.engine_config(&spec.problems[0], 1).unwrap();
        assert_eq!(cfg.seed, 5);
        assert_eq!(cfg.dnpe.lambda, 50.0);
        assert_eq!(cfg.dnpe.sbx_eta, DnpeConfig::default().sbx_eta);
        assert_eq!(cfg.subset_mode, crate::selection::SubsetMode::Random);
    }

    #[test]
    fn unknown_keys_are_config_errors() {
        let e = ExperimentSpec::from_json(r#"{"problems": [], "budget": 1, "out": "x", "bogus": 1}"#);
        assert!(matches!(e, Err(Error::Config(_))));
    }
}
