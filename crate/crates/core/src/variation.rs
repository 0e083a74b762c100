//! Real-coded variation: simulated binary crossover, polynomial mutation, and
//! the gene-pool offspring pipeline.
//!
//! SBX uses the unbounded spread form, so when no bound clamp fires the two
//! children are symmetric about the parents' midpoint. Each variable of a
//! crossed pair is recombined with probability 0.5.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::random::RandomSource;
use crate::types::{DecisionPoint, Individual};

/// Parent gaps below this are treated as coincident.
const COINCIDENT: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariationConfig {
    pub crossover_prob: f64,
    /// `None` means `1 / n`.
    pub mutation_prob: Option<f64>,
    pub sbx_eta: f64,
    pub mutation_eta: f64,
    /// `None` means the population size rounded up to even.
    pub gene_pool_size: Option<usize>,
    pub children_per_pair: usize,
}

impl Default for VariationConfig {
    fn default() -> Self {
        Self {
            crossover_prob: 1.0,
            mutation_prob: None,
            sbx_eta: 20.0,
            mutation_eta: 20.0,
            gene_pool_size: None,
            children_per_pair: 2,
        }
    }
}

impl VariationConfig {
    pub fn validate(&self) -> Result<()> {
        let prob_ok = |p: f64| (0.0..=1.0).contains(&p);
        if !prob_ok(self.crossover_prob) || !self.mutation_prob.is_none_or(prob_ok) {
            return Err(Error::Config("variation probabilities must lie in [0, 1]".into()));
        }
        if !(self.sbx_eta > 0.0 && self.mutation_eta > 0.0) {
            return Err(Error::Config("distribution indices must be positive".into()));
        }
        if let Some(g) = self.gene_pool_size {
            if g == 0 || g % 2 != 0 {
                return Err(Error::Config(format!("gene pool size must be positive and even, got {g}")));
            }
        }
        if !matches!(self.children_per_pair, 1 | 2) {
            return Err(Error::Config("children per pair must be 1 or 2".into()));
        }
        Ok(())
    }

    pub fn mutation_prob_for(&self, n: usize) -> f64 {
        self.mutation_prob.unwrap_or(1.0 / n as f64)
    }

    pub fn pool_size_for(&self, population: usize) -> usize {
        self.gene_pool_size
            .unwrap_or_else(|| population + population % 2)
    }

    /// Offspring produced per generation for a population of the given size.
    pub fn offspring_count(&self, population: usize) -> usize {
        self.pool_size_for(population) / 2 * self.children_per_pair
    }
}

/// Spread factor drawn from the SBX distribution.
fn sbx_beta(u: f64, eta: f64) -> f64 {
    if u <= 0.5 {
        (2.0 * u).powf(1.0 / (eta + 1.0))
    } else {
        (1.0 / (2.0 * (1.0 - u))).powf(1.0 / (eta + 1.0))
    }
}

/// Simulated binary crossover of two parents sharing bounds.
pub fn sbx(
    parent_a: &DecisionPoint,
    parent_b: &DecisionPoint,
    cfg: &VariationConfig,
    rng: &mut RandomSource,
) -> (DecisionPoint, DecisionPoint) {
    debug_assert_eq!(parent_a.len(), parent_b.len());
    let mut a = parent_a.values().to_vec();
    let mut b = parent_b.values().to_vec();
    if rng.uniform() < cfg.crossover_prob {
        for j in 0..a.len() {
            if rng.uniform() >= 0.5 || (a[j] - b[j]).abs() <= COINCIDENT {
                continue;
            }
            let beta = sbx_beta(rng.uniform(), cfg.sbx_eta);
            let (p, q) = (a[j], b[j]);
            a[j] = 0.5 * ((1.0 + beta) * p + (1.0 - beta) * q);
            b[j] = 0.5 * ((1.0 - beta) * p + (1.0 + beta) * q);
        }
    }
    let bounds = parent_a.bounds().clone();
    (
        DecisionPoint::clamped(a, bounds.clone()),
        DecisionPoint::clamped(b, bounds),
    )
}

/// SBX in the bounded form: the spread distribution is truncated so that
/// children always fall inside the bounds and no clamp is needed. Children
/// are swapped per variable with probability 0.5.
pub fn sbx_bounded(
    parent_a: &DecisionPoint,
    parent_b: &DecisionPoint,
    crossover_prob: f64,
    eta: f64,
    rng: &mut RandomSource,
) -> (DecisionPoint, DecisionPoint) {
    debug_assert_eq!(parent_a.len(), parent_b.len());
    let mut a = parent_a.values().to_vec();
    let mut b = parent_b.values().to_vec();
    let bounds = parent_a.bounds().clone();
    if rng.uniform() < crossover_prob {
        for (j, bd) in bounds.iter().enumerate() {
            if rng.uniform() >= 0.5 || (a[j] - b[j]).abs() <= COINCIDENT {
                continue;
            }
            let (y1, y2) = if a[j] < b[j] { (a[j], b[j]) } else { (b[j], a[j]) };
            let gap = y2 - y1;
            let u = rng.uniform();
            let spread = |beta: f64| {
                let alpha = 2.0 - beta.powf(-(eta + 1.0));
                if u <= 1.0 / alpha {
                    (u * alpha).powf(1.0 / (eta + 1.0))
                } else {
                    (1.0 / (2.0 - u * alpha)).powf(1.0 / (eta + 1.0))
                }
            };
            let q1 = spread(1.0 + 2.0 * (y1 - bd.low) / gap);
            let q2 = spread(1.0 + 2.0 * (bd.high - y2) / gap);
            let c1 = bd.clamp(0.5 * ((y1 + y2) - q1 * gap));
            let c2 = bd.clamp(0.5 * ((y1 + y2) + q2 * gap));
            if rng.coin() {
                a[j] = c2;
                b[j] = c1;
            } else {
                a[j] = c1;
                b[j] = c2;
            }
        }
    }
    (
        DecisionPoint::clamped(a, bounds.clone()),
        DecisionPoint::clamped(b, bounds),
    )
}

/// Bounded polynomial mutation with per-variable probability `prob`.
pub fn polynomial_mutation_with(
    x: &DecisionPoint,
    prob: f64,
    eta: f64,
    rng: &mut RandomSource,
) -> DecisionPoint {
    let mut v = x.values().to_vec();
    let bounds = x.bounds().clone();
    let pow = 1.0 / (eta + 1.0);
    for (j, b) in bounds.iter().enumerate() {
        if rng.uniform() >= prob {
            continue;
        }
        let width = b.width();
        if width <= 0.0 {
            continue;
        }
        let y = v[j];
        let d1 = (y - b.low) / width;
        let d2 = (b.high - y) / width;
        let u = rng.uniform();
        let dq = if u < 0.5 {
            let xy = 1.0 - d1;
            let val = 2.0 * u + (1.0 - 2.0 * u) * xy.powf(eta + 1.0);
            val.powf(pow) - 1.0
        } else {
            let xy = 1.0 - d2;
            let val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * xy.powf(eta + 1.0);
            1.0 - val.powf(pow)
        };
        v[j] = b.clamp(y + dq * width);
    }
    DecisionPoint::clamped(v, bounds)
}

pub fn polynomial_mutation(
    x: &DecisionPoint,
    cfg: &VariationConfig,
    rng: &mut RandomSource,
) -> DecisionPoint {
    let prob = cfg.mutation_prob_for(x.len());
    polynomial_mutation_with(x, prob, cfg.mutation_eta, rng)
}

/// Binary tournament on (rank class, minimal proximity distance), with a
/// fair coin on a full tie. Returns the winner's index.
pub fn tournament(population: &[Individual], rng: &mut RandomSource) -> Result<usize> {
    let (i, j) = if population.len() == 1 {
        (0, 0)
    } else {
        rng.distinct_pair(population.len())
    };
    let a = population[i]
        .assessment
        .as_ref()
        .ok_or_else(|| Error::Contract(format!("individual {i} has no rank")))?;
    let b = population[j]
        .assessment
        .as_ref()
        .ok_or_else(|| Error::Contract(format!("individual {j} has no rank")))?;
    if a.rank != b.rank {
        return Ok(if a.rank < b.rank { i } else { j });
    }
    let (da, db) = (a.min_proximity(), b.min_proximity());
    if da < db {
        Ok(i)
    } else if db < da {
        Ok(j)
    } else if rng.coin() {
        Ok(i)
    } else {
        Ok(j)
    }
}

/// Fills a gene pool of `g` members by repeated binary tournaments.
pub fn fill_gene_pool(
    population: &[Individual],
    g: usize,
    rng: &mut RandomSource,
) -> Result<Vec<Individual>> {
    if population.is_empty() {
        return Err(Error::Empty("population"));
    }
    if let Some(i) = population.iter().position(|p| p.assessment.is_none()) {
        return Err(Error::Contract(format!("individual {i} has no rank")));
    }
    (0..g)
        .map(|_| tournament(population, rng).map(|w| population[w].clone()))
        .collect()
}

/// Draws pool slots two at a time, uniformly and without replacement, until
/// the pool is empty. An odd leftover slot is dropped.
pub fn mating_pairs(pool_size: usize, rng: &mut RandomSource) -> Vec<(usize, usize)> {
    let mut slots: Vec<usize> = (0..pool_size).collect();
    rng.shuffle(&mut slots);
    slots.chunks_exact(2).map(|c| (c[0], c[1])).collect()
}

/// Gene pool → random pairs without replacement → SBX → mutation.
/// Returned decisions are not evaluated yet.
pub fn generate_offspring(
    population: &[Individual],
    cfg: &VariationConfig,
    rng: &mut RandomSource,
) -> Result<Vec<DecisionPoint>> {
    cfg.validate()?;
    let g = cfg.pool_size_for(population.len());
    let pool = fill_gene_pool(population, g, rng)?;
    let mut out = Vec::with_capacity(g / 2 * cfg.children_per_pair);
    for (i, j) in mating_pairs(pool.len(), rng) {
        let (c1, c2) = sbx(&pool[i].decision, &pool[j].decision, cfg, rng);
        let c1 = polynomial_mutation(&c1, cfg, rng);
        let c2 = polynomial_mutation(&c2, cfg, rng);
        if cfg.children_per_pair == 2 {
            out.push(c1);
            out.push(c2);
        } else if rng.coin() {
            out.push(c1);
        } else {
            out.push(c2);
        }
    }
    Ok(out)
}
