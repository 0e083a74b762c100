//! Nadir point estimation by decomposition: one scalarized single-objective
//! search per axis, each run by a small elitist genetic algorithm.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{evaluate_one, random_decision, EvalCounter, Problem};
use crate::random::RandomSource;
use crate::types::{Individual, ObjectivePoint};
use crate::variation::{polynomial_mutation_with, sbx_bounded, VariationConfig};

/// Total evaluation cap of the nadir benchmark, shared evenly by the axes.
pub const DEFAULT_TOTAL_CAP: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DnpeConfig {
    /// Weight on the squared off-axis objectives; must exceed 1.
    pub lambda: f64,
    pub population: usize,
    /// Evaluations per axis; `None` means `DEFAULT_TOTAL_CAP / m`.
    pub per_extreme_eval_budget: Option<u64>,
    /// Per-axis normalized error at which an axis stops early; `None` means `0.01 / m`.
    pub per_extreme_tolerance: Option<f64>,
    /// Stop early once the per-axis error is within tolerance. Needs a known
    /// nadir and ideal; ignored otherwise.
    pub error_stop: bool,
    pub crossover_prob: f64,
    /// `None` means `1/n`.
    pub mutation_prob: Option<f64>,
    pub sbx_eta: f64,
    pub mutation_eta: f64,
}

impl Default for DnpeConfig {
    fn default() -> Self {
        Self {
            lambda: 100.0,
            population: 200,
            per_extreme_eval_budget: None,
            per_extreme_tolerance: None,
            error_stop: true,
            crossover_prob: 0.9,
            mutation_prob: None,
            sbx_eta: 20.0,
            mutation_eta: 20.0,
        }
    }
}

impl DnpeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 1.0 && self.lambda.is_finite()) {
            return Err(Error::Config(format!("lambda must exceed 1, got {}", self.lambda)));
        }
        if self.population < 2 {
            return Err(Error::Config("DNPE population must be at least 2".into()));
        }
        if self.per_extreme_eval_budget == Some(0) {
            return Err(Error::Config("DNPE per-axis budget must be positive".into()));
        }
        if let Some(t) = self.per_extreme_tolerance {
            if t.is_nan() || t <= 0.0 {
                return Err(Error::Config(format!("tolerance must be positive, got {t}")));
            }
        }
        let probs = [Some(self.crossover_prob), self.mutation_prob];
        if probs.iter().flatten().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::Config("DNPE probabilities must lie in [0, 1]".into()));
        }
        if !(self.sbx_eta > 0.0 && self.mutation_eta > 0.0) {
            return Err(Error::Config("distribution indices must be positive".into()));
        }
        Ok(())
    }

    pub fn budget_for(&self, m: usize) -> u64 {
        self.per_extreme_eval_budget
            .unwrap_or(DEFAULT_TOTAL_CAP / m as u64)
    }

    pub fn tolerance_for(&self, m: usize) -> f64 {
        self.per_extreme_tolerance.unwrap_or(0.01 / m as f64)
    }

    fn variation(&self) -> VariationConfig {
        VariationConfig {
            crossover_prob: self.crossover_prob,
            sbx_eta: self.sbx_eta,
            mutation_eta: self.mutation_eta,
            mutation_prob: self.mutation_prob,
            ..VariationConfig::default()
        }
    }
}

/// `|y_i| + λ·Σ_{j≠i} y_j²`
pub fn scalarize(y: &[f64], axis: usize, lambda: f64) -> f64 {
    let off: f64 = y
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != axis)
        .map(|(_, v)| v * v)
        .sum();
    y[axis].abs() + lambda * off
}

/// Normalized nadir error `sqrt(Σ ((z_i^nad − z_i) / (z_i^nad − z_i*))²)`.
pub fn nadir_error(estimated: &[f64], true_nadir: &[f64], true_ideal: &[f64]) -> Result<f64> {
    let m = true_nadir.len();
    for v in [estimated, true_ideal] {
        if v.len() != m {
            return Err(Error::Dimension {
                expected: m,
                found: v.len(),
            });
        }
    }
    let mut sum = 0.0;
    for i in 0..m {
        let range = true_nadir[i] - true_ideal[i];
        if range == 0.0 {
            return Err(Error::DegenerateRange {
                axis: i,
                low: true_ideal[i],
                high: true_nadir[i],
            });
        }
        sum += ((true_nadir[i] - estimated[i]) / range).powi(2);
    }
    Ok(sum.sqrt())
}

/// Outcome of one axis search.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisResult {
    pub best: Individual,
    pub evaluations: u64,
    /// The error stop fired before the budget ran out.
    pub converged: bool,
}

struct Scored {
    ind: Individual,
    fitness: f64,
}

/// Minimizes `scalarize(f(x), axis, λ)` with a generational GA: binary
/// tournament on fitness, SBX and polynomial mutation, then the best
/// `population` of parents and offspring survive.
///
/// `truth` holds the known (nadir, ideal); when given and the error stop is
/// on, the search ends as soon as the best-so-far individual's value on
/// `axis` is within tolerance of the true nadir component.
pub fn estimate_extreme_point(
    problem: &dyn Problem,
    axis: usize,
    cfg: &DnpeConfig,
    truth: Option<(&[f64], &[f64])>,
    rng: &mut RandomSource,
) -> Result<AxisResult> {
    cfg.validate()?;
    let m = problem.num_objectives();
    if axis >= m {
        return Err(Error::Config(format!("axis {axis} out of range for {m} objectives")));
    }
    let budget = cfg.budget_for(m);
    if budget == 0 {
        return Err(Error::BudgetExhausted("DNPE axis budget is zero".into()));
    }
    let tol = cfg.tolerance_for(m);
    let within = |y: &[f64]| -> bool {
        match truth {
            Some((nad, ideal)) if cfg.error_stop => {
                ((y[axis] - nad[axis]) / (nad[axis] - ideal[axis])).abs() <= tol
            }
            _ => false,
        }
    };
    let var = cfg.variation();
    let pm = var.mutation_prob_for(problem.num_variables());
    let mut counter = EvalCounter::new();
    let mut best: Option<(Individual, f64)> = None;

    // Evaluates, updates the best-so-far, and reports whether to stop.
    let eval = |d, counter: &mut EvalCounter, best: &mut Option<(Individual, f64)>| -> Result<(Scored, bool)> {
        let ind = evaluate_one(problem, d, counter)?;
        let fitness = scalarize(&ind.objectives, axis, cfg.lambda);
        if best.as_ref().is_none_or(|(_, f)| fitness < *f) {
            *best = Some((ind.clone(), fitness));
        }
        let stop = within(&best.as_ref().expect("set above").0.objectives)
            || counter.get() >= budget;
        Ok((Scored { ind, fitness }, stop))
    };

    let mut pop: Vec<Scored> = Vec::with_capacity(cfg.population);
    let mut done = false;
    for _ in 0..cfg.population {
        let d = random_decision(problem, rng);
        let (s, stop) = eval(d, &mut counter, &mut best)?;
        pop.push(s);
        if stop {
            done = true;
            break;
        }
    }

    while !done {
        let mut children: Vec<Scored> = Vec::with_capacity(cfg.population);
        'gen: while children.len() < cfg.population {
            let a = binary_tournament(&pop, rng);
            let b = binary_tournament(&pop, rng);
            let (c1, c2) = sbx_bounded(
                &pop[a].ind.decision,
                &pop[b].ind.decision,
                var.crossover_prob,
                var.sbx_eta,
                rng,
            );
            for c in [c1, c2] {
                if children.len() == cfg.population {
                    break;
                }
                let c = polynomial_mutation_with(&c, pm, var.mutation_eta, rng);
                let (s, stop) = eval(c, &mut counter, &mut best)?;
                children.push(s);
                if stop {
                    done = true;
                    break 'gen;
                }
            }
        }
        pop.extend(children);
        pop.sort_by(|x, y| x.fitness.total_cmp(&y.fitness));
        pop.truncate(cfg.population);
    }

    let (best, _) = best.expect("at least one evaluation");
    let converged = within(&best.objectives);
    Ok(AxisResult {
        best,
        evaluations: counter.get(),
        converged,
    })
}

fn binary_tournament(pop: &[Scored], rng: &mut RandomSource) -> usize {
    if pop.len() == 1 {
        return 0;
    }
    let (a, b) = rng.distinct_pair(pop.len());
    match pop[a].fitness.total_cmp(&pop[b].fitness) {
        std::cmp::Ordering::Less => a,
        std::cmp::Ordering::Greater => b,
        std::cmp::Ordering::Equal => {
            if rng.coin() {
                a
            } else {
                b
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NadirReport {
    pub extreme_points: Vec<ObjectivePoint>,
    pub nadir: ObjectivePoint,
    pub ideal: ObjectivePoint,
    pub evaluations: u64,
    pub per_axis_evaluations: Vec<u64>,
    /// Normalized error against the known nadir, if there is one.
    pub error: Option<f64>,
    /// Some axis used its whole budget without meeting the tolerance.
    pub exhausted: bool,
}

/// Runs the `m` axis searches in parallel, each on its own child source,
/// and assembles nadir and ideal from the extreme points.
pub fn run_dnpe(problem: &dyn Problem, cfg: &DnpeConfig, rng: &mut RandomSource) -> Result<NadirReport> {
    cfg.validate()?;
    let m = problem.num_objectives();
    let nad = problem.known_nadir();
    let ideal = problem.known_ideal();
    let truth = nad.as_deref().zip(ideal.as_deref());
    let sources = rng.split_n(m);
    let axes: Vec<AxisResult> = sources
        .into_par_iter()
        .enumerate()
        .map(|(i, mut r)| estimate_extreme_point(problem, i, cfg, truth, &mut r))
        .collect::<Result<_>>()?;

    let extreme_points: Vec<ObjectivePoint> =
        axes.iter().map(|a| a.best.objectives.clone()).collect();
    let nadir: Vec<f64> = (0..m).map(|i| extreme_points[i][i]).collect();
    let ideal_est: Vec<f64> = (0..m)
        .map(|j| {
            extreme_points
                .iter()
                .map(|p| p[j])
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let error = match truth {
        Some((n, i)) => Some(nadir_error(&nadir, n, i)?),
        None => None,
    };
    Ok(NadirReport {
        extreme_points,
        nadir: ObjectivePoint::new(nadir)?,
        ideal: ObjectivePoint::new(ideal_est)?,
        evaluations: axes.iter().map(|a| a.evaluations).sum(),
        per_axis_evaluations: axes.iter().map(|a| a.evaluations).collect(),
        error,
        exhausted: axes.iter().any(|a| !a.converged),
    })
}
