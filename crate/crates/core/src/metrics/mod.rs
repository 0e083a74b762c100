//! Quality indicators and the statistics used to compare runs.

mod hv;
mod igd;
pub mod stats;

pub use hv::{
    hv_exact, hv_monte_carlo, hv_normalized, hv_reference_point, HvOptions, DEFAULT_SAMPLES,
    EXACT_MAX_OBJECTIVES,
};
pub use igd::igd;
pub use stats::{rank_sum_test, RankSumResult};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndicatorKind {
    Igd,
    IgdPlus,
    Hv,
    HvNormalized,
}

/// An indicator value; `sample_count` is set only for Monte Carlo hypervolume.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndicatorResult {
    pub name: IndicatorKind,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample_count: Option<u64>,
}
