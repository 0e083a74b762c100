//! Environmental selection: whole rank classes are copied while they fit, and
//! the class that overflows is resolved by an optimal assignment of its
//! members to an evenly spaced subset of the reference points.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::random::RandomSource;
use crate::ranking::RankClass;
use crate::refpoints::ReferencePointSet;
use crate::types::Individual;

/// Rectangular assignment instance: `a` rows (reference points) by `b`
/// columns (candidate individuals), `a ≤ b`.
#[derive(Debug, Clone, PartialEq)]
pub struct LapInstance {
    pub cost: Vec<Vec<f64>>,
}

impl LapInstance {
    pub fn new(cost: Vec<Vec<f64>>) -> Result<Self> {
        if cost.is_empty() {
            return Err(Error::Empty("cost matrix"));
        }
        let b = cost[0].len();
        if cost.iter().any(|r| r.len() != b) {
            return Err(Error::Config("cost matrix rows differ in length".into()));
        }
        if cost.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::Config("cost matrix has non-finite entries".into()));
        }
        Ok(Self { cost })
    }

    pub fn rows(&self) -> usize {
        self.cost.len()
    }

    pub fn cols(&self) -> usize {
        self.cost[0].len()
    }

    pub fn total(&self, assignment: &[usize]) -> f64 {
        assignment
            .iter()
            .enumerate()
            .map(|(r, &c)| self.cost[r][c])
            .sum()
    }
}

/// Hungarian method (shortest augmenting path with potentials), O(a²·b).
///
/// Returns the column assigned to each row. Rows ≤ columns is handled
/// directly; the result is the same as padding with zero-cost dummy rows.
pub fn solve_lap(instance: &LapInstance) -> Result<Vec<usize>> {
    let n = instance.rows();
    let m = instance.cols();
    if n > m {
        return Err(Error::Infeasible { rows: n, cols: m });
    }
    let a = &instance.cost;
    // 1-based potentials and matching, column 0 is the virtual root.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; m + 1];
    let mut p = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                let cur = a[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![usize::MAX; n];
    for j in 1..=m {
        if p[j] > 0 {
            assignment[p[j] - 1] = j - 1;
        }
    }
    debug_assert!(assignment.iter().all(|c| *c != usize::MAX));
    Ok(assignment)
}

/// How the reference subset for the overflowing class is chosen.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetMode {
    /// `floor(t·k/A)` for `t = 0..A` over the canonical reference order.
    #[default]
    Stride,
    /// `A` distinct indices drawn uniformly at random, sorted.
    Random,
}

/// Chooses `count` reference indices out of `k`.
pub fn select_reference_subset(
    k: usize,
    count: usize,
    mode: SubsetMode,
    rng: &mut RandomSource,
) -> Result<Vec<usize>> {
    if count == 0 || count > k {
        return Err(Error::Config(format!(
            "cannot select {count} of {k} reference points"
        )));
    }
    match mode {
        SubsetMode::Stride => {
            let mut out: Vec<usize> = Vec::with_capacity(count);
            for t in 0..count {
                let mut idx = t * k / count;
                if let Some(&last) = out.last() {
                    if idx <= last {
                        idx = last + 1;
                    }
                }
                out.push(idx);
            }
            Ok(out)
        }
        SubsetMode::Random => {
            let mut all: Vec<usize> = (0..k).collect();
            rng.shuffle(&mut all);
            all.truncate(count);
            all.sort_unstable();
            Ok(all)
        }
    }
}

/// Picks `slots` survivors from `union`. Every member must carry a rank and a
/// proximity row whose length equals the reference count.
pub fn environmental_select(
    union: Vec<Individual>,
    refs: &ReferencePointSet,
    slots: usize,
    mode: SubsetMode,
    rng: &mut RandomSource,
) -> Result<Vec<Individual>> {
    if slots > union.len() {
        return Err(Error::Config(format!(
            "cannot select {slots} survivors from {} candidates",
            union.len()
        )));
    }
    let mut fronts: [Vec<Individual>; 3] = Default::default();
    for (i, ind) in union.into_iter().enumerate() {
        let a = ind
            .assessment
            .as_ref()
            .ok_or_else(|| Error::Contract(format!("individual {i} has no rank")))?;
        if a.proximity_row.len() != refs.len() {
            return Err(Error::Dimension {
                expected: refs.len(),
                found: a.proximity_row.len(),
            });
        }
        fronts[a.rank.index()].push(ind);
    }

    let mut survivors = Vec::with_capacity(slots);
    for rank in RankClass::ALL {
        let front = std::mem::take(&mut fronts[rank.index()]);
        let room = slots - survivors.len();
        if front.len() <= room {
            survivors.extend(front);
            if survivors.len() == slots {
                break;
            }
            continue;
        }
        let chosen = assign_boundary(&front, refs, room, mode, rng)?;
        let mut front: Vec<Option<Individual>> = front.into_iter().map(Some).collect();
        for c in chosen {
            survivors.push(front[c].take().expect("assignment columns are distinct"));
        }
        break;
    }
    debug_assert_eq!(survivors.len(), slots);
    Ok(survivors)
}

/// Indices into `front` of the members matched to `count` reference points.
fn assign_boundary(
    front: &[Individual],
    refs: &ReferencePointSet,
    count: usize,
    mode: SubsetMode,
    rng: &mut RandomSource,
) -> Result<Vec<usize>> {
    let rows = select_reference_subset(refs.len(), count, mode, rng)?;
    let cost: Vec<Vec<f64>> = rows
        .iter()
        .map(|&r| {
            front
                .iter()
                .map(|ind| ind.proximity_row().expect("checked by caller")[r])
                .collect()
        })
        .collect();
    solve_lap(&LapInstance::new(cost)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lap_examples() {
        let i = LapInstance::new(vec![vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        let a = solve_lap(&i).unwrap();
        assert_eq!(a, vec![0, 1]);
        assert_eq!(i.total(&a), 2.0);
        let i = LapInstance::new(vec![vec![4.0, 1.0], vec![2.0, 3.0]]).unwrap();
        let a = solve_lap(&i).unwrap();
        assert_eq!(a, vec![1, 0]);
        assert_eq!(i.total(&a), 3.0);
    }

    #[test]
    fn lap_zero_matrix() {
        let i = LapInstance::new(vec![vec![0.0; 5]; 3]).unwrap();
        let a = solve_lap(&i).unwrap();
        let mut s = a.clone();
        s.sort_unstable();
        s.dedup();
        assert_eq!(s.len(), 3);
        assert_eq!(i.total(&a), 0.0);
    }

    #[test]
    fn lap_infeasible() {
        let i = LapInstance::new(vec![vec![0.0; 2]; 3]).unwrap();
        assert!(matches!(solve_lap(&i), Err(Error::Infeasible { rows: 3, cols: 2 })));
    }

    #[test]
    fn stride_subsets() {
        let mut rng = RandomSource::new(0);
        let s = |k, a, rng: &mut RandomSource| {
            select_reference_subset(k, a, SubsetMode::Stride, rng).unwrap()
        };
        assert_eq!(s(6, 6, &mut rng), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(s(6, 3, &mut rng), vec![0, 2, 4]);
        assert_eq!(s(5, 2, &mut rng), vec![0, 2]);
        assert!(select_reference_subset(3, 4, SubsetMode::Stride, &mut rng).is_err());
    }

    #[test]
    fn random_subsets_are_distinct() {
        let mut rng = RandomSource::new(1);
        let s = select_reference_subset(10, 4, SubsetMode::Random, &mut rng).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
    }
}
