//! Value types shared by every module: points in objective and decision space,
//! variable bounds, and evaluated individuals.

use std::ops::Deref;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ranking::RankClass;

/// A closed interval `[low, high]` for one decision variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bound {
    pub low: f64,
    pub high: f64,
}

impl Bound {
    pub const UNIT: Bound = Bound { low: 0.0, high: 1.0 };

    pub fn new(low: f64, high: f64) -> Result<Self> {
        if !(low.is_finite() && high.is_finite() && low <= high) {
            return Err(Error::Config(format!("invalid bound [{low}, {high}]")));
        }
        Ok(Self { low, high })
    }

    pub fn width(&self) -> f64 {
        self.high - self.low
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.low && v <= self.high
    }

    pub fn clamp(&self, v: f64) -> f64 {
        v.clamp(self.low, self.high)
    }
}

/// A point in objective space. Every entry is finite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectivePoint(Vec<f64>);

impl ObjectivePoint {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(j) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Contract(format!(
                "objective {j} is not finite ({})",
                values[j]
            )));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl AsRef<[f64]> for ObjectivePoint {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl Deref for ObjectivePoint {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// A point in decision space together with the bounds it must respect.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionPoint {
    values: Vec<f64>,
    bounds: Arc<[Bound]>,
}

impl DecisionPoint {
    /// Builds a decision point, rejecting any variable outside its bound.
    pub fn new(values: Vec<f64>, bounds: Arc<[Bound]>) -> Result<Self> {
        if values.len() != bounds.len() {
            return Err(Error::Dimension {
                expected: bounds.len(),
                found: values.len(),
            });
        }
        for (index, (&value, b)) in values.iter().zip(bounds.iter()).enumerate() {
            if !b.contains(value) {
                return Err(Error::Domain {
                    index,
                    value,
                    low: b.low,
                    high: b.high,
                });
            }
        }
        Ok(Self { values, bounds })
    }

    /// Builds a decision point by clamping every variable into its bound.
    pub fn clamped(mut values: Vec<f64>, bounds: Arc<[Bound]>) -> Self {
        debug_assert_eq!(values.len(), bounds.len());
        for (v, b) in values.iter_mut().zip(bounds.iter()) {
            *v = b.clamp(*v);
        }
        Self { values, bounds }
    }

    pub(crate) fn unchecked(values: Vec<f64>, bounds: Arc<[Bound]>) -> Self {
        Self { values, bounds }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn bounds(&self) -> &Arc<[Bound]> {
        &self.bounds
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of the first variable outside its bound, if any.
    pub fn out_of_bounds(&self) -> Option<usize> {
        self.values
            .iter()
            .zip(self.bounds.iter())
            .position(|(v, b)| !b.contains(*v))
    }
}

/// Rank class and proximity row attached by the ranking step.
#[derive(Debug, Clone, PartialEq)]
pub struct Assessment {
    pub rank: RankClass,
    pub proximity_row: Vec<f64>,
}

impl Assessment {
    /// Smallest entry of the proximity row (`+inf` for an empty row).
    pub fn min_proximity(&self) -> f64 {
        self.proximity_row
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

/// An evaluated candidate solution.
///
/// Rank and proximity row live together in [`Assessment`], so an individual
/// carries either both or neither.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub decision: DecisionPoint,
    pub objectives: ObjectivePoint,
    pub assessment: Option<Assessment>,
}

impl Individual {
    pub fn new(decision: DecisionPoint, objectives: ObjectivePoint) -> Self {
        Self {
            decision,
            objectives,
            assessment: None,
        }
    }

    pub fn rank(&self) -> Option<RankClass> {
        self.assessment.as_ref().map(|a| a.rank)
    }

    pub fn proximity_row(&self) -> Option<&[f64]> {
        self.assessment.as_ref().map(|a| a.proximity_row.as_slice())
    }
}
