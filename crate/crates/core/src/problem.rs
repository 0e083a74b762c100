//! The optimization-problem abstraction, Pareto dominance and population
//! evaluation. Every problem is minimized; maximize by negating objectives.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::random::RandomSource;
use crate::types::{Bound, DecisionPoint, Individual, ObjectivePoint};

/// A box-constrained, unconstrained-objective minimization problem.
///
/// `evaluate` must be pure and deterministic: the same decision vector always
/// produces the same objective vector, bit for bit.
pub trait Problem: Send + Sync {
    fn name(&self) -> &str;
    fn num_objectives(&self) -> usize;
    fn bounds(&self) -> &Arc<[Bound]>;
    fn evaluate(&self, x: &[f64]) -> Vec<f64>;

    fn num_variables(&self) -> usize {
        self.bounds().len()
    }

    fn known_ideal(&self) -> Option<Vec<f64>> {
        None
    }

    fn known_nadir(&self) -> Option<Vec<f64>> {
        None
    }
}

/// Monotone count of objective-function evaluations, threaded through every
/// operation that calls [`Problem::evaluate`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalCounter(u64);

impl EvalCounter {
    pub fn new() -> Self {
        Self(0)
    }

    pub fn get(&self) -> u64 {
        self.0
    }

    pub fn add(&mut self, n: u64) {
        self.0 += n;
    }
}

/// Dominance relation of `a` with respect to `b` under minimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    /// `a` dominates `b`.
    Dominates,
    /// `b` dominates `a`.
    Dominated,
    Equal,
    Incomparable,
}

/// Compares two objective vectors of equal length in a single pass.
pub fn compare(a: &[f64], b: &[f64]) -> Dominance {
    debug_assert_eq!(a.len(), b.len());
    let mut a_better = false;
    let mut b_better = false;
    for (x, y) in a.iter().zip(b) {
        if x < y {
            a_better = true;
        } else if y < x {
            b_better = true;
        }
        if a_better && b_better {
            return Dominance::Incomparable;
        }
    }
    match (a_better, b_better) {
        (true, false) => Dominance::Dominates,
        (false, true) => Dominance::Dominated,
        (false, false) => Dominance::Equal,
        (true, true) => Dominance::Incomparable,
    }
}

/// Pareto dominance: `a` is no worse everywhere and strictly better somewhere.
pub fn dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(compare(a, b) == Dominance::Dominates)
}

/// Evaluates one decision point, bumping the counter.
pub fn evaluate_one(
    problem: &dyn Problem,
    decision: DecisionPoint,
    counter: &mut EvalCounter,
) -> Result<Individual> {
    if decision.len() != problem.num_variables() {
        return Err(Error::Dimension {
            expected: problem.num_variables(),
            found: decision.len(),
        });
    }
    if let Some(index) = decision.out_of_bounds() {
        let b = decision.bounds()[index];
        return Err(Error::Domain {
            index,
            value: decision.values()[index],
            low: b.low,
            high: b.high,
        });
    }
    let y = problem.evaluate(decision.values());
    counter.add(1);
    let objectives = ObjectivePoint::new(y)?;
    if objectives.len() != problem.num_objectives() {
        return Err(Error::Dimension {
            expected: problem.num_objectives(),
            found: objectives.len(),
        });
    }
    Ok(Individual::new(decision, objectives))
}

/// Evaluates a population. The counter grows by exactly `pop.len()` on success.
pub fn evaluate_population(
    pop: Vec<DecisionPoint>,
    problem: &dyn Problem,
    counter: &mut EvalCounter,
) -> Result<Vec<Individual>> {
    // Validate up front so a failure leaves the counter untouched.
    for d in &pop {
        if d.len() != problem.num_variables() {
            return Err(Error::Dimension {
                expected: problem.num_variables(),
                found: d.len(),
            });
        }
        if let Some(index) = d.out_of_bounds() {
            let b = d.bounds()[index];
            return Err(Error::Domain {
                index,
                value: d.values()[index],
                low: b.low,
                high: b.high,
            });
        }
    }
    pop.into_iter()
        .map(|d| evaluate_one(problem, d, counter))
        .collect()
}

/// Uniform random decision point within the problem's bounds.
pub fn random_decision(problem: &dyn Problem, rng: &mut RandomSource) -> DecisionPoint {
    let bounds = problem.bounds().clone();
    let values = bounds
        .iter()
        .map(|b| rng.uniform_in(b.low, b.high).min(b.high))
        .collect();
    DecisionPoint::unchecked(values, bounds)
}
