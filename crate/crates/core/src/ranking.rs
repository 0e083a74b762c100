//! Rank classes and proximity distances relative to the reference set.
//!
//! Each individual is compared only against the reference points, never
//! against other individuals:
//!
//! * `R1`: dominates at least one reference point.
//! * `R2`: non-dominated with respect to every reference point.
//! * `R3`: everything else (dominated by all, or by some and incomparable to the rest).
//!
//! Proximity distances to each reference point are signed by class: negative
//! Euclidean for `R1`, the dominance-truncated distance
//! `sqrt(Σ max(y_l − p_l, 0)²)` for `R2`, and plain Euclidean for `R3`.
//! Smaller is better in every class.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{compare, Dominance};
use crate::refpoints::ReferencePointSet;
use crate::types::{Assessment, Individual};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RankClass {
    R1,
    R2,
    R3,
}

impl RankClass {
    pub const ALL: [RankClass; 3] = [RankClass::R1, RankClass::R2, RankClass::R3];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// `q × k` proximity distances, one row per individual.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ProximityMatrix {
    pub entries: Vec<Vec<f64>>,
    pub row_rank: Vec<RankClass>,
    /// Dominance comparisons performed while building the matrix.
    pub dominance_checks: u64,
}

impl ProximityMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    /// Checks the per-class sign pattern; returns the first offending row.
    pub fn sign_violation(&self) -> Option<usize> {
        self.entries
            .iter()
            .zip(&self.row_rank)
            .position(|(row, rank)| match rank {
                RankClass::R1 => row.iter().any(|d| *d > 0.0),
                RankClass::R2 | RankClass::R3 => row.iter().any(|d| *d < 0.0),
            })
    }
}

fn check_dim(y: &[f64], refs: &ReferencePointSet) -> Result<()> {
    if refs.is_empty() {
        return Err(Error::Empty("reference set"));
    }
    if y.len() != refs.dim() {
        return Err(Error::Dimension {
            expected: refs.dim(),
            found: y.len(),
        });
    }
    Ok(())
}

fn classify(y: &[f64], refs: &ReferencePointSet, checks: &mut u64) -> RankClass {
    let mut dominated_by_some = false;
    for p in &refs.points {
        *checks += 1;
        match compare(y, p) {
            Dominance::Dominates => return RankClass::R1,
            Dominance::Dominated => dominated_by_some = true,
            Dominance::Equal | Dominance::Incomparable => {}
        }
    }
    if dominated_by_some {
        RankClass::R3
    } else {
        RankClass::R2
    }
}

/// Rank class of `y` with respect to the reference set.
pub fn rank_individual(y: &[f64], refs: &ReferencePointSet) -> Result<RankClass> {
    check_dim(y, refs)?;
    let mut checks = 0;
    Ok(classify(y, refs, &mut checks))
}

fn euclidean(y: &[f64], p: &[f64]) -> f64 {
    y.iter().zip(p).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()
}

/// Distance from `y` to `p` counting only the components where `y` is worse.
pub fn truncated_distance(y: &[f64], p: &[f64]) -> f64 {
    y.iter()
        .zip(p)
        .map(|(a, b)| (a - b).max(0.0).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn row_for(y: &[f64], rank: RankClass, refs: &ReferencePointSet) -> Vec<f64> {
    refs.points
        .iter()
        .map(|p| match rank {
            RankClass::R1 => -euclidean(y, p),
            RankClass::R2 => truncated_distance(y, p),
            RankClass::R3 => euclidean(y, p),
        })
        .collect()
}

/// Proximity row of `y`; `rank` must be the class [`rank_individual`] assigns.
pub fn proximity_row(y: &[f64], rank: RankClass, refs: &ReferencePointSet) -> Result<Vec<f64>> {
    let actual = rank_individual(y, refs)?;
    if actual != rank {
        return Err(Error::Contract(format!(
            "rank {rank:?} does not match the computed class {actual:?}"
        )));
    }
    Ok(row_for(y, rank, refs))
}

/// Attaches a rank and proximity row to every individual.
pub fn assign_all(
    mut population: Vec<Individual>,
    refs: &ReferencePointSet,
) -> Result<(Vec<Individual>, ProximityMatrix)> {
    let mut matrix = ProximityMatrix::default();
    if population.is_empty() {
        return Ok((population, matrix));
    }
    check_dim(&population[0].objectives, refs)?;
    for ind in population.iter_mut() {
        let y = ind.objectives.values();
        if y.len() != refs.dim() {
            return Err(Error::Dimension {
                expected: refs.dim(),
                found: y.len(),
            });
        }
        let rank = classify(y, refs, &mut matrix.dominance_checks);
        let row = row_for(y, rank, refs);
        matrix.entries.push(row.clone());
        matrix.row_rank.push(rank);
        ind.assessment = Some(Assessment {
            rank,
            proximity_row: row,
        });
    }
    Ok((population, matrix))
}

/// Counts of `R1`, `R2`, `R3` members.
pub fn census(population: &[Individual]) -> [usize; 3] {
    let mut c = [0; 3];
    for r in population.iter().filter_map(Individual::rank) {
        c[r.index()] += 1;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refpoints::PointSource;

    fn refs(points: Vec<Vec<f64>>) -> ReferencePointSet {
        ReferencePointSet {
            points,
            source: PointSource::Utopian,
        }
    }

    #[test]
    fn class_examples() {
        let r = refs(vec![vec![0.5, 0.5]]);
        assert_eq!(rank_individual(&[0.4, 0.4], &r).unwrap(), RankClass::R1);
        let r = refs(vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert_eq!(rank_individual(&[0.5, 0.5], &r).unwrap(), RankClass::R2);
        assert_eq!(rank_individual(&[0.5, 2.0], &r).unwrap(), RankClass::R3);
        assert_eq!(rank_individual(&[2.0, 2.0], &r).unwrap(), RankClass::R3);
    }

    #[test]
    fn equal_to_reference_is_r2() {
        let r = refs(vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert_eq!(rank_individual(&[1.0, 0.0], &r).unwrap(), RankClass::R2);
    }

    #[test]
    fn distance_examples() {
        let r = refs(vec![vec![1.0, 0.0]]);
        let d = proximity_row(&[1.5, 0.5], RankClass::R3, &r).unwrap();
        assert!((d[0] - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((truncated_distance(&[1.5, 0.5], &[1.0, 0.0]) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-9);
        assert!((truncated_distance(&[0.5, 1.5], &[1.0, 0.0]) - 1.5).abs() < 1e-9);
        let r = refs(vec![vec![0.5, 0.5]]);
        let d = proximity_row(&[0.4, 0.4], RankClass::R1, &r).unwrap();
        assert!((d[0] + 0.141_421_356_237_309_5).abs() < 1e-9);
    }

    #[test]
    fn inconsistent_rank_is_rejected() {
        let r = refs(vec![vec![0.5, 0.5]]);
        assert!(matches!(
            proximity_row(&[0.4, 0.4], RankClass::R3, &r),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn dimension_mismatch() {
        let r = refs(vec![vec![0.5, 0.5]]);
        assert!(matches!(
            rank_individual(&[0.4, 0.4, 0.1], &r),
            Err(Error::Dimension { .. })
        ));
    }
}
