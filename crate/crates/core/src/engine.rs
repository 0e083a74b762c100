//! The optimizer main loop and a random-search baseline that produces
//! records of the same shape.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::igd;
use crate::nadir::{run_dnpe, DnpeConfig, NadirReport};
use crate::problem::{compare, evaluate_population, random_decision, Dominance, EvalCounter};
use crate::problems::{make_problem, sample_true_front, BenchmarkSpec};
use crate::random::RandomSource;
use crate::ranking::{assign_all, census};
use crate::refpoints::{to_utopian, two_layer, LayerConfig, ReferencePointSet};
use crate::selection::{environmental_select, SubsetMode};
use crate::types::{Individual, ObjectivePoint};
use crate::variation::{generate_offspring, VariationConfig};

/// Smallest nadir-minus-ideal range accepted when building reference points.
/// Narrower axes are widened to this.
const MIN_RANGE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub problem_id: String,
    pub m: usize,
    pub layers: LayerConfig,
    /// Must equal the reference point count; `None` takes that count.
    pub population_size: Option<usize>,
    pub total_eval_budget: u64,
    pub dnpe: DnpeConfig,
    /// Upper bound on the share of the total budget spent estimating the nadir.
    pub dnpe_budget_fraction: f64,
    pub variation: VariationConfig,
    pub subset_mode: SubsetMode,
    /// Lower the ideal point to the component-wise minimum of every objective
    /// vector seen so far and rebuild the reference points when it moves.
    pub track_ideal: bool,
    /// Size of the analytic front sample used for the per-generation IGD
    /// trajectory (only for problems with a known front). Zero disables it.
    pub trajectory_igd_points: usize,
    pub seed: u64,
}

impl EngineConfig {
    /// Defaults for everything except the problem, budget and seed.
    ///
    /// The nadir search population defaults to the reference point count.
    pub fn new(problem_id: &str, m: usize, total_eval_budget: u64, seed: u64) -> Self {
        let layers = LayerConfig::default_for(m);
        let dnpe_population = two_layer(m, &layers).map_or(200, |r| r.len().max(2));
        Self {
            problem_id: problem_id.to_string(),
            m,
            layers,
            population_size: None,
            total_eval_budget,
            dnpe: DnpeConfig {
                error_stop: false,
                population: dnpe_population,
                ..DnpeConfig::default()
            },
            dnpe_budget_fraction: 0.2,
            variation: VariationConfig::default(),
            subset_mode: SubsetMode::Stride,
            track_ideal: false,
            trajectory_igd_points: 1000,
            seed,
        }
    }

    /// Evaluations handed to the nadir estimation phase, split evenly over the axes.
    pub fn dnpe_budget(&self) -> u64 {
        let wanted = self.dnpe.budget_for(self.m) * self.m as u64;
        let cap = (self.dnpe_budget_fraction * self.total_eval_budget as f64).floor() as u64;
        wanted.min(cap)
    }

    /// Checks everything that can be checked without evaluating anything and
    /// returns the reference point count.
    pub fn validate(&self) -> Result<usize> {
        let spec = BenchmarkSpec::from_id(&self.problem_id, self.m)?;
        make_problem(spec)?;
        self.variation.validate()?;
        self.dnpe.validate()?;
        if !(self.dnpe_budget_fraction > 0.0 && self.dnpe_budget_fraction < 1.0) {
            return Err(Error::Config(format!(
                "dnpe_budget_fraction must lie in (0, 1), got {}",
                self.dnpe_budget_fraction
            )));
        }
        let k = two_layer(self.m, &self.layers)?.len();
        if let Some(n) = self.population_size {
            if n != k {
                return Err(Error::Config(format!(
                    "population size {n} must equal the reference point count {k}"
                )));
            }
        }
        if self.total_eval_budget <= self.dnpe_budget() {
            return Err(Error::Config(format!(
                "total budget {} does not exceed the nadir estimation budget {}",
                self.total_eval_budget,
                self.dnpe_budget()
            )));
        }
        Ok(k)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub generation: usize,
    pub evaluations: u64,
    /// Smallest per-individual minimal proximity distance.
    pub best_min_proximity: Option<f64>,
    pub mean_min_proximity: Option<f64>,
    /// `[R1, R2, R3]` counts.
    pub census: Option<[usize; 3]>,
    pub igd: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Member {
    pub decision: Vec<f64>,
    pub objectives: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algorithm: String,
    pub config: EngineConfig,
    pub nadir: Option<NadirReport>,
    pub generations: Vec<GenerationStats>,
    pub evaluations: u64,
    pub final_population: Vec<Member>,
}

impl RunRecord {
    pub fn final_objectives(&self) -> Vec<Vec<f64>> {
        self.final_population
            .iter()
            .map(|m| m.objectives.clone())
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn members(pop: &[Individual]) -> Vec<Member> {
    pop.iter()
        .map(|i| Member {
            decision: i.decision.values().to_vec(),
            objectives: i.objectives.values().to_vec(),
        })
        .collect()
}

fn trajectory_front(
    spec: BenchmarkSpec,
    points: usize,
    rng: &mut RandomSource,
) -> Option<Vec<ObjectivePoint>> {
    if points == 0 {
        return None;
    }
    sample_true_front(spec, points, rng).ok()
}

fn stats(
    generation: usize,
    evaluations: u64,
    pop: &[Individual],
    front: Option<&[ObjectivePoint]>,
) -> Result<GenerationStats> {
    let mins: Vec<f64> = pop
        .iter()
        .filter_map(|i| i.assessment.as_ref().map(|a| a.min_proximity()))
        .collect();
    let ranked = !mins.is_empty();
    let objectives: Vec<&[f64]> = pop.iter().map(|i| i.objectives.values()).collect();
    Ok(GenerationStats {
        generation,
        evaluations,
        best_min_proximity: ranked.then(|| mins.iter().copied().fold(f64::INFINITY, f64::min)),
        mean_min_proximity: ranked.then(|| mins.iter().sum::<f64>() / mins.len() as f64),
        census: ranked.then(|| census(pop)),
        igd: match front {
            Some(f) => Some(igd(f, &objectives, false)?),
            None => None,
        },
    })
}

/// Maps the simplex points between `ideal` and `nadir`, widening axes whose
/// range is below `MIN_RANGE`.
fn utopian_refs(
    simplex: &ReferencePointSet,
    ideal: &[f64],
    nadir: &[f64],
) -> Result<ReferencePointSet> {
    let nadir: Vec<f64> = nadir
        .iter()
        .zip(ideal)
        .map(|(hi, lo)| hi.max(lo + MIN_RANGE))
        .collect();
    to_utopian(simplex, ideal, &nadir)
}

/// Returns whether any component moved.
fn lower_ideal(ideal: &mut [f64], pop: &[Individual]) -> bool {
    let mut moved = false;
    for ind in pop {
        for (z, y) in ideal.iter_mut().zip(ind.objectives.values()) {
            if *y < *z {
                *z = *y;
                moved = true;
            }
        }
    }
    moved
}

/// One optimizer run: nadir estimation, Utopian reference points, then
/// rank/proximity assignment, gene-pool variation and environmental
/// selection until the next offspring batch would exceed the budget.
pub fn run(config: &EngineConfig) -> Result<RunRecord> {
    let k = config.validate()?;
    let spec = BenchmarkSpec::from_id(&config.problem_id, config.m)?;
    let problem = make_problem(spec)?;
    let n = k;
    let offspring = config.variation.offspring_count(n) as u64;
    let dnpe_total = config.dnpe_budget();
    let per_axis = dnpe_total / config.m as u64;
    if per_axis == 0 {
        return Err(Error::BudgetExhausted(format!(
            "nadir estimation share {dnpe_total} is less than one evaluation per axis"
        )));
    }
    if dnpe_total + n as u64 + offspring > config.total_eval_budget {
        return Err(Error::BudgetExhausted(format!(
            "budget {} cannot cover nadir estimation ({dnpe_total}), initialization ({n}) and one generation ({offspring})",
            config.total_eval_budget
        )));
    }

    let mut rng = RandomSource::new(config.seed);
    let mut dnpe_rng = rng.split();
    let mut front_rng = rng.split();
    let front = trajectory_front(spec, config.trajectory_igd_points, &mut front_rng);
    let front = front.as_deref();

    let dnpe_cfg = DnpeConfig {
        per_extreme_eval_budget: Some(per_axis),
        ..config.dnpe.clone()
    };
    let report = run_dnpe(&problem, &dnpe_cfg, &mut dnpe_rng)?;
    let mut counter = EvalCounter::new();
    counter.add(report.evaluations);

    let nadir = report.nadir.values().to_vec();
    let mut ideal = report.ideal.values().to_vec();
    let simplex = two_layer(config.m, &config.layers)?;
    let mut refs = utopian_refs(&simplex, &ideal, &nadir)?;

    let init: Vec<_> = (0..n).map(|_| random_decision(&problem, &mut rng)).collect();
    let pop = evaluate_population(init, &problem, &mut counter)?;
    if config.track_ideal && lower_ideal(&mut ideal, &pop) {
        refs = utopian_refs(&simplex, &ideal, &nadir)?;
    }
    let (mut pop, _) = assign_all(pop, &refs)?;
    let mut generations = vec![stats(0, counter.get(), &pop, front)?];

    while counter.get() + offspring <= config.total_eval_budget {
        let children = generate_offspring(&pop, &config.variation, &mut rng)?;
        let children = evaluate_population(children, &problem, &mut counter)?;
        if config.track_ideal && lower_ideal(&mut ideal, &children) {
            refs = utopian_refs(&simplex, &ideal, &nadir)?;
            pop = assign_all(pop, &refs)?.0;
        }
        let (children, _) = assign_all(children, &refs)?;
        pop.extend(children);
        pop = environmental_select(pop, &refs, n, config.subset_mode, &mut rng)?;
        generations.push(stats(generations.len(), counter.get(), &pop, front)?);
    }

    Ok(RunRecord {
        algorithm: "maoea-igd".into(),
        config: config.clone(),
        nadir: Some(report),
        generations,
        evaluations: counter.get(),
        final_population: members(&pop),
    })
}

/// Indices of the first non-dominated fronts that together cover `keep`
/// members; the last front is returned separately when it overflows.
fn fronts_to_fill(objs: &[&[f64]], keep: usize) -> (Vec<usize>, Vec<usize>) {
    let n = objs.len();
    let mut dominated_by = vec![0usize; n];
    let mut dominates: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            match compare(objs[i], objs[j]) {
                Dominance::Dominates => {
                    dominates[i].push(j);
                    dominated_by[j] += 1;
                }
                Dominance::Dominated => {
                    dominates[j].push(i);
                    dominated_by[i] += 1;
                }
                _ => {}
            }
        }
    }
    let mut chosen = Vec::with_capacity(keep);
    let mut current: Vec<usize> = (0..n).filter(|&i| dominated_by[i] == 0).collect();
    while !current.is_empty() {
        if chosen.len() + current.len() > keep {
            return (chosen, current);
        }
        chosen.extend(&current);
        if chosen.len() == keep {
            break;
        }
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominates[i] {
                dominated_by[j] -= 1;
                if dominated_by[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        current = next;
    }
    (chosen, Vec::new())
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Removes members of `front` one at a time until `target` remain, always
/// dropping the one closest to its nearest neighbour (ties: the one whose
/// second-nearest neighbour is closer, then the later index).
fn crowding_truncate(objs: &[&[f64]], mut front: Vec<usize>, target: usize) -> Vec<usize> {
    while front.len() > target {
        let mut worst = 0;
        let mut worst_key = (f64::INFINITY, f64::INFINITY);
        for (a, &i) in front.iter().enumerate() {
            let (mut d1, mut d2) = (f64::INFINITY, f64::INFINITY);
            for &j in &front {
                if i == j {
                    continue;
                }
                let d = distance(objs[i], objs[j]);
                if d < d1 {
                    d2 = d1;
                    d1 = d;
                } else if d < d2 {
                    d2 = d;
                }
            }
            if (d1, d2) <= worst_key {
                worst_key = (d1, d2);
                worst = a;
            }
        }
        front.remove(worst);
    }
    front
}

/// Keeps `keep` members: whole non-dominated fronts first, then the
/// overflowing front thinned by nearest-neighbour distance.
fn baseline_select(pool: Vec<Individual>, keep: usize) -> Vec<Individual> {
    if pool.len() <= keep {
        return pool;
    }
    let objs: Vec<&[f64]> = pool.iter().map(|i| i.objectives.values()).collect();
    let (mut chosen, last) = fronts_to_fill(&objs, keep);
    if chosen.len() < keep {
        chosen.extend(crowding_truncate(&objs, last, keep - chosen.len()));
    }
    chosen.sort_unstable();
    let mut pool: Vec<Option<Individual>> = pool.into_iter().map(Some).collect();
    chosen
        .into_iter()
        .map(|i| pool[i].take().expect("indices are distinct"))
        .collect()
}

/// Uniform random search over the whole budget, archiving the best
/// population-size set. Chunks of ten populations form the "generations".
pub fn run_random_baseline(config: &EngineConfig) -> Result<RunRecord> {
    let k = config.validate()?;
    let spec = BenchmarkSpec::from_id(&config.problem_id, config.m)?;
    let problem = make_problem(spec)?;
    let n = k;
    let mut rng = RandomSource::new(config.seed);
    // Same split order as the optimizer, so both use the same front sample.
    let _ = rng.split();
    let mut front_rng = rng.split();
    let front = trajectory_front(spec, config.trajectory_igd_points, &mut front_rng);
    let front = front.as_deref();

    let mut counter = EvalCounter::new();
    let mut archive: Vec<Individual> = Vec::new();
    let mut generations = Vec::new();
    let chunk = (10 * n) as u64;
    while counter.get() < config.total_eval_budget {
        let take = chunk.min(config.total_eval_budget - counter.get()) as usize;
        let batch: Vec<_> = (0..take).map(|_| random_decision(&problem, &mut rng)).collect();
        let batch = evaluate_population(batch, &problem, &mut counter)?;
        archive.extend(batch);
        archive = baseline_select(archive, n);
        generations.push(stats(generations.len(), counter.get(), &archive, front)?);
    }
    Ok(RunRecord {
        algorithm: "random-search".into(),
        config: config.clone(),
        nadir: None,
        generations,
        evaluations: counter.get(),
        final_population: members(&archive),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn objs(v: &[Vec<f64>]) -> Vec<&[f64]> {
        v.iter().map(Vec::as_slice).collect()
    }

    #[test]
    fn fronts_fill_in_order() {
        let pts = vec![
            vec![1.0, 1.0],
            vec![0.0, 2.0],
            vec![2.0, 2.0],
            vec![3.0, 3.0],
        ];
        let (chosen, last) = fronts_to_fill(&objs(&pts), 3);
        assert_eq!(chosen, vec![0, 1, 2]);
        assert!(last.is_empty());
        let (chosen, last) = fronts_to_fill(&objs(&pts), 1);
        assert!(chosen.is_empty());
        assert_eq!(last, vec![0, 1]);
    }

    #[test]
    fn crowding_drops_the_most_crowded() {
        let pts = vec![vec![0.0, 1.0], vec![0.01, 0.99], vec![1.0, 0.0], vec![0.5, 0.5]];
        let kept = crowding_truncate(&objs(&pts), vec![0, 1, 2, 3], 3);
        assert_eq!(kept.len(), 3);
        assert!(kept.contains(&2) && kept.contains(&3));
    }

    #[test]
    fn dnpe_budget_is_capped() {
        let c = EngineConfig::new("dtlz2", 3, 25_000, 1);
        assert_eq!(c.dnpe_budget(), 5000);
        let c = EngineConfig::new("dtlz2", 3, 2_000_000, 1);
        assert_eq!(c.dnpe_budget(), 99_999);
    }

    #[test]
    fn population_must_match_reference_count() {
        let mut c = EngineConfig::new("dtlz2", 3, 25_000, 1);
        assert_eq!(c.validate().unwrap(), 91);
        c.population_size = Some(90);
        assert!(matches!(c.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn tiny_budget_is_rejected_before_evaluating() {
        let c = EngineConfig::new("dtlz2", 3, 200, 1);
        assert!(matches!(run(&c), Err(Error::BudgetExhausted(_))));
    }
}
