//! Hypervolume: exact recursive slicing for up to eight objectives, and a
//! Monte Carlo estimator for anything larger.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problems::{BenchmarkSpec, Family};
use crate::random::RandomSource;

/// Largest objective count accepted by [`hv_exact`].
pub const EXACT_MAX_OBJECTIVES: usize = 8;

/// Default Monte Carlo sample count.
pub const DEFAULT_SAMPLES: u64 = 1_000_000;

/// Fixed shard count, so estimates do not depend on the thread pool size.
const SHARDS: u64 = 16;

fn check_dims<P: AsRef<[f64]>>(front: &[P], ref_point: &[f64]) -> Result<()> {
    for p in front {
        if p.as_ref().len() != ref_point.len() {
            return Err(Error::Dimension {
                expected: ref_point.len(),
                found: p.as_ref().len(),
            });
        }
    }
    Ok(())
}

/// Keeps only points strictly better than the reference point in every objective.
fn inside<P: AsRef<[f64]>>(front: &[P], ref_point: &[f64]) -> Vec<Vec<f64>> {
    front
        .iter()
        .map(AsRef::as_ref)
        .filter(|p| p.iter().zip(ref_point).all(|(a, r)| a < r))
        .map(<[f64]>::to_vec)
        .collect()
}

/// Exact dominated volume of `front` bounded by `ref_point`.
/// Points that do not dominate the reference point contribute nothing.
pub fn hv_exact<P: AsRef<[f64]>>(front: &[P], ref_point: &[f64]) -> Result<f64> {
    let m = ref_point.len();
    if m > EXACT_MAX_OBJECTIVES {
        return Err(Error::UseMonteCarlo { m });
    }
    if m == 0 {
        return Err(Error::Empty("reference point"));
    }
    check_dims(front, ref_point)?;
    let pts = inside(front, ref_point);
    Ok(slice_volume(pts, ref_point, m))
}

/// Drops points weakly dominated (in the first `d` coordinates) by another.
fn nondominated(mut pts: Vec<Vec<f64>>, d: usize) -> Vec<Vec<f64>> {
    pts.sort_by(|a, b| {
        a[..d]
            .iter()
            .zip(&b[..d])
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut keep: Vec<Vec<f64>> = Vec::with_capacity(pts.len());
    for p in pts {
        let covered = keep
            .iter()
            .any(|q| q[..d].iter().zip(&p[..d]).all(|(a, b)| a <= b));
        if !covered {
            keep.push(p);
        }
    }
    keep
}

fn slice_volume(pts: Vec<Vec<f64>>, r: &[f64], d: usize) -> f64 {
    if pts.is_empty() {
        return 0.0;
    }
    match d {
        1 => r[0] - pts.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min),
        2 => {
            let mut pts = pts;
            pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
            let mut area = 0.0;
            let mut ceiling = r[1];
            for p in &pts {
                if p[1] < ceiling {
                    area += (r[0] - p[0]) * (ceiling - p[1]);
                    ceiling = p[1];
                }
            }
            area
        }
        _ => {
            let last = d - 1;
            let mut pts = pts;
            pts.sort_by(|a, b| a[last].total_cmp(&b[last]));
            let mut volume = 0.0;
            let mut active: Vec<Vec<f64>> = Vec::new();
            for i in 0..pts.len() {
                active.push(pts[i].clone());
                let top = if i + 1 < pts.len() { pts[i + 1][last] } else { r[last] };
                let depth = top - pts[i][last];
                if depth <= 0.0 {
                    continue;
                }
                active = nondominated(active, last);
                volume += slice_volume(active.clone(), r, last) * depth;
            }
            volume
        }
    }
}

/// Monte Carlo estimate of the dominated volume inside the box `[lower, ref_point]`.
pub fn hv_monte_carlo<P: AsRef<[f64]> + Sync>(
    front: &[P],
    ref_point: &[f64],
    lower: &[f64],
    samples: u64,
    rng: &mut RandomSource,
) -> Result<f64> {
    check_dims(front, ref_point)?;
    if lower.len() != ref_point.len() {
        return Err(Error::Dimension {
            expected: ref_point.len(),
            found: lower.len(),
        });
    }
    for (axis, (lo, hi)) in lower.iter().zip(ref_point).enumerate() {
        if lo >= hi {
            return Err(Error::DegenerateRange {
                axis,
                low: *lo,
                high: *hi,
            });
        }
    }
    let box_volume: f64 = lower.iter().zip(ref_point).map(|(l, r)| r - l).product();
    let pts = nondominated(inside(front, ref_point), ref_point.len());
    if pts.is_empty() || samples == 0 {
        return Ok(0.0);
    }
    let shards = rng.split_n(SHARDS as usize);
    let hits: u64 = shards
        .into_par_iter()
        .enumerate()
        .map(|(s, mut shard_rng)| {
            let count = samples / SHARDS + u64::from((s as u64) < samples % SHARDS);
            let mut x = vec![0.0; lower.len()];
            let mut hits = 0u64;
            for _ in 0..count {
                for (j, v) in x.iter_mut().enumerate() {
                    *v = shard_rng.uniform_in(lower[j], ref_point[j]);
                }
                if pts
                    .iter()
                    .any(|p| p.iter().zip(&x).all(|(a, b)| a <= b))
                {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    Ok(hits as f64 / samples as f64 * box_volume)
}

/// Reference point used for a benchmark's hypervolume: `1` for DTLZ1, `2`
/// for DTLZ2–6, and `2i + 1` for DTLZ7 and all WFG problems.
pub fn hv_reference_point(spec: BenchmarkSpec) -> Vec<f64> {
    match (spec.family, spec.index) {
        (Family::Dtlz, 1) => vec![1.0; spec.m],
        (Family::Dtlz, 2..=6) => vec![2.0; spec.m],
        _ => (1..=spec.m).map(|i| 2.0 * i as f64 + 1.0).collect(),
    }
}

/// Options for the Monte Carlo path of [`hv_normalized`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HvOptions {
    pub samples: u64,
    pub seed: u64,
}

impl Default for HvOptions {
    fn default() -> Self {
        Self {
            samples: DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

/// Hypervolume divided by the volume of the box between the origin and the
/// benchmark's reference point, so the result lies in `[0, 1]`.
///
/// Exact for `m ≤ 8`, Monte Carlo (lower corner at the origin) otherwise.
pub fn hv_normalized<P: AsRef<[f64]> + Sync>(
    front: &[P],
    problem_id: &str,
    m: usize,
    opts: HvOptions,
) -> Result<f64> {
    let spec = BenchmarkSpec::from_id(problem_id, m)?;
    let r = hv_reference_point(spec);
    let origin = vec![0.0; m];
    let full: f64 = r.iter().product();
    let hv = if m <= EXACT_MAX_OBJECTIVES {
        hv_exact(front, &r)?
    } else {
        hv_monte_carlo(front, &r, &origin, opts.samples, &mut RandomSource::new(opts.seed))?
    };
    Ok((hv / full).clamp(0.0, 1.0))
}
