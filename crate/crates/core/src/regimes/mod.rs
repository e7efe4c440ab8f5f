//! Adjudicating one continuous growth stage against several regimes.
//!
//! All tests here operate on reciprocal series, where a single first-order
//! hyperbolic stage is a single straight line.

mod chow;
mod deviation;
mod monotonicity;
mod report;
mod segmentation;
mod verdict;

pub use chow::{chow_test, ChowResult, CHOW_MIN_SIDE_POINTS};
pub use deviation::{flag_deviations, DeviationFlag, DeviationReport, Side, DEFAULT_Z_THRESHOLD};
pub use monotonicity::{monotonicity_report, Direction, Monotonicity, MonotonicityReport, Violation};
pub use report::{bic, BreakReport, Segmentation, Verdict};
pub use segmentation::{scan_breakpoints, MAX_SEGMENTS, MIN_SEGMENT_POINTS};
pub use verdict::{regime_verdict, RegimeVerdict};
