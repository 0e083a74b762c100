//! Per-cell indicator tables, the summary table and pairwise comparisons.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::rank_sum_test;
use crate::metrics::stats::{mean, median, std_dev};

/// Indicator columns of a cell table, in order.
pub const INDICATORS: [&str; 3] = ["igd", "igd_plus", "hv"];

const ALPHA: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRow {
    pub run: usize,
    pub seed: u64,
    pub evaluations: u64,
    pub igd: Option<f64>,
    pub igd_plus: Option<f64>,
    pub hv: Option<f64>,
}

impl CellRow {
    pub fn indicator(&self, name: &str) -> Option<f64> {
        match name {
            "igd" => self.igd,
            "igd_plus" => self.igd_plus,
            "hv" => self.hv,
            _ => None,
        }
    }
}

fn lower_is_better(indicator: &str) -> bool {
    indicator != "hv"
}

/// Outcome for the first sample against the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mark {
    #[serde(rename = "+")]
    Better,
    #[serde(rename = "=")]
    Tie,
    #[serde(rename = "-")]
    Worse,
}

impl Mark {
    pub fn symbol(self) -> &'static str {
        match self {
            Mark::Better => "+",
            Mark::Tie => "=",
            Mark::Worse => "-",
        }
    }
}

fn mark(indicator: &str, a: &[f64], b: &[f64], p: f64) -> Mark {
    if p >= ALPHA {
        return Mark::Tie;
    }
    let (ma, mb) = (median(a), median(b));
    let (ma, mb) = if ma == mb { (mean(a), mean(b)) } else { (ma, mb) };
    if ma == mb {
        return Mark::Tie;
    }
    if (ma < mb) == lower_is_better(indicator) {
        Mark::Better
    } else {
        Mark::Worse
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub problem: String,
    pub m: usize,
    pub algorithm: String,
    pub indicator: String,
    pub runs: usize,
    pub mean: f64,
    pub std: f64,
    pub median: f64,
    /// Rank-sum p-value of this algorithm against the baseline.
    pub p_value: Option<f64>,
    pub mark: Option<Mark>,
}

fn column(rows: &[CellRow], indicator: &str) -> Vec<f64> {
    rows.iter().filter_map(|r| r.indicator(indicator)).collect()
}

fn describe(problem: &str, m: usize, algorithm: &str, indicator: &str, v: &[f64]) -> SummaryRow {
    SummaryRow {
        problem: problem.into(),
        m,
        algorithm: algorithm.into(),
        indicator: indicator.into(),
        runs: v.len(),
        mean: mean(v),
        std: std_dev(v),
        median: median(v),
        p_value: None,
        mark: None,
    }
}

/// Summary rows of one cell. Engine rows carry a p-value and mark against the
/// baseline when one is given and both samples have at least two values.
pub fn summarize(
    problem: &str,
    m: usize,
    engine: &[CellRow],
    baseline: Option<&[CellRow]>,
) -> Result<Vec<SummaryRow>> {
    let mut out = Vec::new();
    for ind in INDICATORS {
        let e = column(engine, ind);
        if e.is_empty() {
            continue;
        }
        let mut row = describe(problem, m, "engine", ind, &e);
        let b = baseline.map(|rows| column(rows, ind));
        if let Some(b) = &b {
            if e.len() >= 2 && b.len() >= 2 {
                let t = rank_sum_test(&e, b)?;
                row.p_value = Some(t.p_value);
                row.mark = Some(mark(ind, &e, b, t.p_value));
            }
        }
        out.push(row);
        if let Some(b) = b.filter(|b| !b.is_empty()) {
            out.push(describe(problem, m, "baseline", ind, &b));
        }
    }
    Ok(out)
}

pub fn write_cell_csv(path: &Path, rows: &[CellRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    if rows.is_empty() {
        w.write_record(["run", "seed", "evaluations", "igd", "igd_plus", "hv"])?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_cell_csv(path: &Path) -> Result<Vec<CellRow>> {
    let mut r = csv::Reader::from_path(path)?;
    let rows = r.deserialize().collect::<std::result::Result<Vec<CellRow>, _>>()?;
    Ok(rows)
}

pub fn write_summary_csv(path: &Path, rows: &[SummaryRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub indicator: String,
    pub median_a: f64,
    pub median_b: f64,
    pub u: f64,
    pub p_value: f64,
    /// From the point of view of `a`.
    pub mark: Mark,
}

/// Rank-sum comparison of two cell tables, one entry per indicator present in both.
pub fn compare_cells(a: &[CellRow], b: &[CellRow]) -> Result<Vec<Comparison>> {
    let mut out = Vec::new();
    for ind in INDICATORS {
        let (va, vb) = (column(a, ind), column(b, ind));
        if va.is_empty() || vb.is_empty() {
            continue;
        }
        let t = rank_sum_test(&va, &vb)?;
        out.push(Comparison {
            indicator: ind.into(),
            median_a: median(&va),
            median_b: median(&vb),
            u: t.u,
            p_value: t.p_value,
            mark: mark(ind, &va, &vb, t.p_value),
        });
    }
    if out.is_empty() {
        return Err(Error::Config("the two tables share no indicator values".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(run: usize, igd: f64, hv: f64) -> CellRow {
        CellRow {
            run,
            seed: run as u64,
            evaluations: 10,
            igd: Some(igd),
            igd_plus: None,
            hv: Some(hv),
        }
    }

    #[test]
    fn marks_follow_direction() {
        let a: Vec<CellRow> = (0..10).map(|i| row(i, 0.1 + i as f64 * 1e-3, 0.9)).collect();
        let b: Vec<CellRow> = (0..10).map(|i| row(i, 0.5 + i as f64 * 1e-3, 0.2 + i as f64 * 1e-3)).collect();
        let c = compare_cells(&a, &b).unwrap();
        assert_eq!(c[0].indicator, "igd");
        assert_eq!(c[0].mark, Mark::Better);
        assert_eq!(c[1].indicator, "hv");
        assert_eq!(c[1].mark, Mark::Better);
        let c = compare_cells(&b, &a).unwrap();
        assert!(c.iter().all(|x| x.mark == Mark::Worse));
        let c = compare_cells(&a, &a).unwrap();
        assert!(c.iter().all(|x| x.mark == Mark::Tie));
    }
}
