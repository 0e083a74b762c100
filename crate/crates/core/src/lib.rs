//! Many-objective optimization driven by the IGD indicator: nadir estimation,
//! Utopian reference points, rank classes with proximity distances, gene-pool
//! variation and assignment-based environmental selection.
//!
//! The crate also ships the DTLZ and WFG benchmark suites, the usual quality
//! indicators, and an experiment harness that writes JSON and CSV artifacts.

pub mod engine;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod nadir;
pub mod problem;
pub mod problems;
pub mod random;
pub mod ranking;
pub mod refpoints;
pub mod selection;
pub mod types;
pub mod variation;

pub use error::{Error, Result};
pub use problem::{compare, dominates, Dominance, EvalCounter, Problem};
pub use random::RandomSource;
pub use types::{Assessment, Bound, DecisionPoint, Individual, ObjectivePoint};
