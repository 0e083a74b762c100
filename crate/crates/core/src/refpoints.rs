//! Reference-point generation: Das–Dennis simplex lattices, the two-layer
//! construction, and the affine map onto the Utopian front spanned by an
//! ideal and a nadir point.
//!
//! Lattice rows are emitted in descending lexicographic order of their
//! compositions (`(d,0,…,0)` first, `(0,…,0,d)` last). Downstream subset
//! selection indexes into this order, so it is part of the contract.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inner-layer contraction toward the simplex centroid.
pub const DEFAULT_SHRINK: f64 = 0.5;

const DEDUP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointSource {
    UnitSimplex,
    Utopian,
}

/// `k` reference points in `m` objectives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferencePointSet {
    pub points: Vec<Vec<f64>>,
    pub source: PointSource,
}

impl ReferencePointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LayerConfig {
    pub outer_divisions: usize,
    /// Zero disables the inner layer.
    pub inner_divisions: usize,
    pub shrink: f64,
}

impl LayerConfig {
    pub fn single(divisions: usize) -> Self {
        Self {
            outer_divisions: divisions,
            inner_divisions: 0,
            shrink: DEFAULT_SHRINK,
        }
    }

    pub fn two(outer: usize, inner: usize) -> Self {
        Self {
            outer_divisions: outer,
            inner_divisions: inner,
            shrink: DEFAULT_SHRINK,
        }
    }

    /// Layer settings used when none are given: the published two-layer
    /// table for 8, 15 and 20 objectives, common single-layer choices elsewhere.
    pub fn default_for(m: usize) -> Self {
        match m {
            2 => Self::single(99),
            3 => Self::single(12),
            4 => Self::single(7),
            5 => Self::single(5),
            6 | 7 => Self::single(4),
            8 | 9 => Self::two(3, 3),
            10..=12 => Self::two(3, 2),
            13..=17 => Self::two(2, 2),
            _ => Self::two(2, 1),
        }
    }

    /// Expected point count before deduplication.
    pub fn point_count(&self, m: usize) -> usize {
        let inner = if self.inner_divisions > 0 {
            binomial(self.inner_divisions + m - 1, m - 1)
        } else {
            0
        };
        binomial(self.outer_divisions + m - 1, m - 1) + inner
    }

    fn validate(&self) -> Result<()> {
        if self.outer_divisions == 0 {
            return Err(Error::Config("outer divisions must be positive".into()));
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return Err(Error::Config(format!(
                "shrink must lie in (0, 1), got {}",
                self.shrink
            )));
        }
        Ok(())
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k.min(n));
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All compositions of `divisions` into `m` non-negative parts, scaled by
/// `1 / divisions`, in descending lexicographic order.
pub fn das_dennis(m: usize, divisions: usize) -> Result<ReferencePointSet> {
    if m < 2 {
        return Err(Error::Config(format!("objective count must be at least 2, got {m}")));
    }
    if divisions == 0 {
        return Err(Error::Config("divisions must be positive".into()));
    }
    let mut points = Vec::with_capacity(binomial(divisions + m - 1, m - 1));
    let mut parts = vec![0usize; m];
    compositions(&mut parts, 0, divisions, &mut |c| {
        points.push(c.iter().map(|&p| p as f64 / divisions as f64).collect());
    });
    Ok(ReferencePointSet {
        points,
        source: PointSource::UnitSimplex,
    })
}

fn compositions(parts: &mut [usize], at: usize, left: usize, emit: &mut impl FnMut(&[usize])) {
    if at == parts.len() - 1 {
        parts[at] = left;
        emit(parts);
        return;
    }
    for v in (0..=left).rev() {
        parts[at] = v;
        compositions(parts, at + 1, left - v, emit);
    }
}

/// Outer lattice plus an inner lattice contracted toward the centroid by
/// `w' = (1 − shrink)/m + shrink · w`. Near-duplicate rows are dropped.
pub fn two_layer(m: usize, cfg: &LayerConfig) -> Result<ReferencePointSet> {
    cfg.validate()?;
    let mut set = das_dennis(m, cfg.outer_divisions)?;
    if cfg.inner_divisions > 0 {
        let inner = das_dennis(m, cfg.inner_divisions)?;
        let offset = (1.0 - cfg.shrink) / m as f64;
        for w in inner.points {
            let p: Vec<f64> = w.iter().map(|v| offset + cfg.shrink * v).collect();
            let dup = set.points.iter().any(|q| {
                q.iter().zip(&p).all(|(a, b)| (a - b).abs() <= DEDUP_TOL)
            });
            if !dup {
                set.points.push(p);
            }
        }
    }
    Ok(set)
}

/// Maps unit-simplex rows onto the Utopian front: `p_j · (nadir_j − ideal_j) + ideal_j`.
pub fn to_utopian(
    points: &ReferencePointSet,
    ideal: &[f64],
    nadir: &[f64],
) -> Result<ReferencePointSet> {
    if points.source != PointSource::UnitSimplex {
        return Err(Error::Contract("reference points are already on the Utopian front".into()));
    }
    check_range(points.dim(), ideal, nadir)?;
    let mapped = points
        .points
        .iter()
        .map(|row| {
            row.iter()
                .zip(ideal.iter().zip(nadir))
                .map(|(p, (lo, hi))| p * (hi - lo) + lo)
                .collect()
        })
        .collect();
    Ok(ReferencePointSet {
        points: mapped,
        source: PointSource::Utopian,
    })
}

/// Inverse of [`to_utopian`].
pub fn from_utopian(
    points: &ReferencePointSet,
    ideal: &[f64],
    nadir: &[f64],
) -> Result<ReferencePointSet> {
    if points.source != PointSource::Utopian {
        return Err(Error::Contract("reference points are not on the Utopian front".into()));
    }
    check_range(points.dim(), ideal, nadir)?;
    let mapped = points
        .points
        .iter()
        .map(|row| {
            row.iter()
                .zip(ideal.iter().zip(nadir))
                .map(|(p, (lo, hi))| (p - lo) / (hi - lo))
                .collect()
        })
        .collect();
    Ok(ReferencePointSet {
        points: mapped,
        source: PointSource::UnitSimplex,
    })
}

fn check_range(dim: usize, ideal: &[f64], nadir: &[f64]) -> Result<()> {
    for v in [ideal, nadir] {
        if v.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: v.len(),
            });
        }
    }
    for (axis, (lo, hi)) in ideal.iter().zip(nadir).enumerate() {
        if lo >= hi {
            return Err(Error::DegenerateRange {
                axis,
                low: *lo,
                high: *hi,
            });
        }
    }
    Ok(())
}
