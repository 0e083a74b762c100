//! Scalable DTLZ and WFG benchmark problems.
//!
//! Problems are addressed by lowercase ids `dtlz1`..`dtlz7` and
//! `wfg1`..`wfg9`. Dimensioning follows the usual many-objective setup:
//!
//! * DTLZ: `n = k + m − 1` with `k = 5` (DTLZ1), `10` (DTLZ2–6), `20` (DTLZ7).
//! * WFG: `n = k + l` with `k = m − 1` position and `l = 20` distance parameters.

pub mod dtlz;
pub mod wfg;

use std::fmt;
use std::sync::Arc;

use rand_distr::{Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::random::RandomSource;
use crate::types::{Bound, ObjectivePoint};

/// Number of WFG distance parameters.
pub const WFG_DISTANCE_PARAMS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Dtlz,
    Wfg,
}

/// Identifies one benchmark instance: family, problem index and objective count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BenchmarkSpec {
    pub family: Family,
    pub index: u8,
    pub m: usize,
}

impl BenchmarkSpec {
    pub fn new(family: Family, index: u8, m: usize) -> Result<Self> {
        let max = match family {
            Family::Dtlz => 7,
            Family::Wfg => 9,
        };
        if index == 0 || index > max {
            return Err(Error::Unsupported(format!("{family}{index} is not a known benchmark")));
        }
        if m < 2 {
            return Err(Error::Config(format!("objective count must be at least 2, got {m}")));
        }
        Ok(Self { family, index, m })
    }

    /// Parses a registry id such as `dtlz2` or `wfg9`.
    pub fn from_id(id: &str, m: usize) -> Result<Self> {
        let (family, rest) = if let Some(rest) = id.strip_prefix("dtlz") {
            (Family::Dtlz, rest)
        } else if let Some(rest) = id.strip_prefix("wfg") {
            (Family::Wfg, rest)
        } else {
            return Err(Error::Unsupported(format!("unknown problem id '{id}'")));
        };
        let index: u8 = rest
            .parse()
            .map_err(|_| Error::Unsupported(format!("unknown problem id '{id}'")))?;
        Self::new(family, index, m)
    }

    pub fn id(&self) -> String {
        format!("{}{}", self.family, self.index)
    }

    /// Position parameters (DTLZ: `m − 1`; WFG: `k = m − 1`).
    pub fn position_params(&self) -> usize {
        self.m - 1
    }

    pub fn distance_params(&self) -> usize {
        match self.family {
            Family::Dtlz => dtlz::distance_count(self.index),
            Family::Wfg => WFG_DISTANCE_PARAMS,
        }
    }

    pub fn n(&self) -> usize {
        self.position_params() + self.distance_params()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Dtlz => "dtlz",
            Family::Wfg => "wfg",
        })
    }
}

/// All registry ids in canonical order.
pub fn registry_ids() -> Vec<String> {
    (1..=7)
        .map(|i| format!("dtlz{i}"))
        .chain((1..=9).map(|i| format!("wfg{i}")))
        .collect()
}

/// A benchmark instance implementing [`Problem`].
#[derive(Debug, Clone)]
pub struct Benchmark {
    spec: BenchmarkSpec,
    name: String,
    bounds: Arc<[Bound]>,
}

impl Benchmark {
    pub fn spec(&self) -> BenchmarkSpec {
        self.spec
    }
}

pub fn make_problem(spec: BenchmarkSpec) -> Result<Benchmark> {
    let spec = BenchmarkSpec::new(spec.family, spec.index, spec.m)?;
    let n = spec.n();
    let bounds: Vec<Bound> = match spec.family {
        Family::Dtlz => vec![Bound::UNIT; n],
        Family::Wfg => (1..=n)
            .map(|i| Bound {
                low: 0.0,
                high: 2.0 * i as f64,
            })
            .collect(),
    };
    Ok(Benchmark {
        spec,
        name: spec.id(),
        bounds: bounds.into(),
    })
}

/// Registry lookup by id.
pub fn problem_by_id(id: &str, m: usize) -> Result<Benchmark> {
    make_problem(BenchmarkSpec::from_id(id, m)?)
}

impl Problem for Benchmark {
    fn name(&self) -> &str {
        &self.name
    }

    fn num_objectives(&self) -> usize {
        self.spec.m
    }

    fn bounds(&self) -> &Arc<[Bound]> {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        match self.spec.family {
            Family::Dtlz => dtlz::evaluate(self.spec.index, x, self.spec.m),
            Family::Wfg => wfg::evaluate(self.spec.index, x, self.spec.position_params(), self.spec.m),
        }
    }

    fn known_ideal(&self) -> Option<Vec<f64>> {
        true_nadir(self.spec).ok().map(|_| vec![0.0; self.spec.m])
    }

    fn known_nadir(&self) -> Option<Vec<f64>> {
        true_nadir(self.spec).ok().map(ObjectivePoint::into_inner)
    }
}

/// Published nadir point for DTLZ1, DTLZ2 and WFG2.
pub fn true_nadir(spec: BenchmarkSpec) -> Result<ObjectivePoint> {
    let m = spec.m;
    let values = match (spec.family, spec.index) {
        (Family::Dtlz, 1) => vec![0.5; m],
        (Family::Dtlz, 2) => vec![1.0; m],
        (Family::Wfg, 2) => (1..=m).map(|i| 2.0 * i as f64).collect(),
        _ => {
            return Err(Error::Unsupported(format!(
                "no published nadir point for {}",
                spec.id()
            )))
        }
    };
    ObjectivePoint::new(values)
}

/// Draws `count` points uniformly from the analytic Pareto front of DTLZ1
/// (simplex `Σy = 0.5`) or DTLZ2 (positive orthant of the unit sphere).
pub fn sample_true_front(
    spec: BenchmarkSpec,
    count: usize,
    rng: &mut RandomSource,
) -> Result<Vec<ObjectivePoint>> {
    let m = spec.m;
    let sampler: fn(&mut RandomSource, usize) -> Vec<f64> = match (spec.family, spec.index) {
        (Family::Dtlz, 1) => |rng, m| {
            let e: Vec<f64> = (0..m).map(|_| rng.sample::<f64, _>(&Exp1)).collect();
            let s: f64 = e.iter().sum();
            e.into_iter().map(|v| 0.5 * v / s).collect()
        },
        (Family::Dtlz, 2) => |rng, m| loop {
            let g: Vec<f64> = (0..m)
                .map(|_| rng.sample::<f64, _>(&StandardNormal).abs())
                .collect();
            let r = g.iter().map(|v| v * v).sum::<f64>().sqrt();
            if r > 0.0 {
                break g.into_iter().map(|v| v / r).collect();
            }
        },
        _ => {
            return Err(Error::Unsupported(format!(
                "no analytic front sampler for {}",
                spec.id()
            )))
        }
    };
    (0..count)
        .map(|_| ObjectivePoint::new(sampler(rng, m)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensioning_rules() {
        assert_eq!(BenchmarkSpec::from_id("dtlz1", 8).unwrap().n(), 12);
        assert_eq!(BenchmarkSpec::from_id("dtlz2", 3).unwrap().n(), 12);
        assert_eq!(BenchmarkSpec::from_id("dtlz7", 3).unwrap().n(), 22);
        assert_eq!(BenchmarkSpec::from_id("wfg2", 15).unwrap().n(), 34);
    }

    #[test]
    fn registry_rejects_unknown_ids() {
        assert!(BenchmarkSpec::from_id("dtlz8", 3).is_err());
        assert!(BenchmarkSpec::from_id("wfg0", 3).is_err());
        assert!(BenchmarkSpec::from_id("zdt1", 3).is_err());
        assert!(BenchmarkSpec::from_id("dtlz1", 1).is_err());
        assert_eq!(registry_ids().len(), 16);
        for id in registry_ids() {
            assert_eq!(BenchmarkSpec::from_id(&id, 3).unwrap().id(), id);
        }
    }

    #[test]
    fn nadir_table() {
        let d1 = BenchmarkSpec::from_id("dtlz1", 4).unwrap();
        assert_eq!(true_nadir(d1).unwrap().values(), &[0.5; 4]);
        let w2 = BenchmarkSpec::from_id("wfg2", 3).unwrap();
        assert_eq!(true_nadir(w2).unwrap().values(), &[2.0, 4.0, 6.0]);
        let d7 = BenchmarkSpec::from_id("dtlz7", 3).unwrap();
        assert!(matches!(true_nadir(d7), Err(Error::Unsupported(_))));
    }

    #[test]
    fn known_points_only_for_published_problems() {
        let p = problem_by_id("dtlz2", 3).unwrap();
        assert_eq!(p.known_nadir().unwrap(), vec![1.0; 3]);
        assert_eq!(p.known_ideal().unwrap(), vec![0.0; 3]);
        assert!(problem_by_id("dtlz3", 3).unwrap().known_nadir().is_none());
    }

    #[test]
    fn front_samples_satisfy_identities() {
        let mut rng = RandomSource::new(1);
        let d1 = BenchmarkSpec::from_id("dtlz1", 3).unwrap();
        for p in sample_true_front(d1, 200, &mut rng).unwrap() {
            assert!((p.iter().sum::<f64>() - 0.5).abs() < 1e-12);
        }
        let d2 = BenchmarkSpec::from_id("dtlz2", 5).unwrap();
        for p in sample_true_front(d2, 200, &mut rng).unwrap() {
            assert!((p.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(p.iter().all(|v| *v >= 0.0));
        }
        assert!(sample_true_front(d2, 0, &mut rng).unwrap().is_empty());
        let w = BenchmarkSpec::from_id("wfg2", 3).unwrap();
        assert!(sample_true_front(w, 1, &mut rng).is_err());
    }
}
