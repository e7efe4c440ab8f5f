//! Reciprocal-transform diagnostics for hyperbolic growth.
//!
//! A series growing as `S(t) = 1 / (a - k·t)` has reciprocals on a falling
//! straight line. This crate fits that line, rebuilds the hyperbola (and the
//! ratio of two hyperbolas for per-capita quantities), and asks whether the
//! reciprocals are better described by one line or by several regimes.
//!
//! The numeric code is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below name the double-precision instantiations used by the CLI.
//!
//! ```
//! use hypergrowth::{fit_hyperbola, TimeSeries64};
//!
//! let points = (0..10).map(|i| {
//!     let t = 100.0 * i as f64;
//!     (t, 1.0 / (10.0 - 0.01 * t))
//! });
//! let series = TimeSeries64::new("population", "millions", points.collect()).unwrap();
//! let (model, fit) = fit_hyperbola(&series, None).unwrap();
//! assert!((model.t_s().unwrap() - 1000.0).abs() < 1e-6);
//! assert!(fit.r2 > 0.999_999);
//! ```

// `!(x > 0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fit;
pub mod hyperbola;
pub mod ingest;
pub mod ratio;
pub mod regimes;
pub mod report;
pub mod scalar;
pub mod series;
pub mod special;
pub mod synth;

pub use error::{Error, Result};
pub use fit::{fit_line, LinearFit, Residual};
pub use hyperbola::{
    eval_hyperbola, fit_general_hyperbola, fit_hyperbola, hyperbola_from_line, ExponentCandidate, GeneralFit,
    HyperbolicModel, DEFAULT_Q_GRID,
};
pub use ratio::{ratio_trajectory, RatioTrajectory};
pub use regimes::{
    chow_test, flag_deviations, monotonicity_report, regime_verdict, scan_breakpoints, BreakReport, DeviationReport,
    Direction, RegimeVerdict, Verdict,
};
pub use scalar::Real;
pub use series::{reciprocal, TimeSeries};

pub type TimeSeries64 = TimeSeries<f64>;
pub type LinearFit64 = LinearFit<f64>;
pub type HyperbolicModel64 = HyperbolicModel<f64>;
pub type RatioTrajectory64 = RatioTrajectory<f64>;
pub type BreakReport64 = BreakReport<f64>;
pub type GeneralFit64 = GeneralFit<f64>;

pub type TimeSeries32 = TimeSeries<f32>;
pub type LinearFit32 = LinearFit<f32>;
pub type HyperbolicModel32 = HyperbolicModel<f32>;
