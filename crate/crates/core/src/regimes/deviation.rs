use crate::error::{Error, Result};
use crate::fit::LinearFit;
use crate::scalar::{noise_floor, Real};
use crate::series::TimeSeries;

pub const DEFAULT_Z_THRESHOLD: f64 = 3.0;

/// Position of an observation relative to the fitted reciprocal line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Reciprocal above the line: growth running below the hyperbola.
    AboveLine,
    BelowLine,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::AboveLine => "above_line",
            Side::BelowLine => "below_line",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviationFlag<T> {
    pub t: T,
    pub residual: T,
    pub z: T,
    pub flagged: bool,
    pub side: Side,
    /// Whether the point took part in the fit.
    pub included: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeviationReport<T> {
    pub threshold: T,
    /// `sqrt(rss / (n - 2))` over the included points.
    pub scale: T,
    pub flags: Vec<DeviationFlag<T>>,
}

impl<T: Real> DeviationReport<T> {
    pub fn flagged(&self) -> impl Iterator<Item = &DeviationFlag<T>> {
        self.flags.iter().filter(|f| f.flagged)
    }
}

/// Scores every point of `series` against `fit` in units of the residual scale.
///
/// The scale uses included points only with `n - 2` degrees of freedom, so
/// excluded points are scored out of sample. Residuals at rounding-noise level
/// relative to the series' values score `z = 0`.
pub fn flag_deviations<T: Real>(
    series: &TimeSeries<T>,
    fit: &LinearFit<T>,
    z_threshold: T,
) -> Result<DeviationReport<T>> {
    if fit.n <= 2 {
        return Err(Error::UndefinedResidualScale { included: fit.n });
    }
    if z_threshold.is_nan() || z_threshold < T::zero() {
        return Err(Error::InvalidParameter {
            name: "z_threshold",
            reason: format!("must be non-negative, got {z_threshold}"),
        });
    }
    if fit.residuals.len() != series.len() || fit.residuals.iter().zip(series.years()).any(|(r, t)| r.t != t) {
        return Err(Error::FitMismatch(format!(
            "fit covers {} years, series {:?} has {}",
            fit.residuals.len(),
            series.label(),
            series.len()
        )));
    }

    let scale = (fit.rss / T::count(fit.n - 2)).sqrt();
    let mean_abs = series.values().map(|v| v.abs()).sum::<T>() / T::count(series.len());
    let floor = noise_floor(mean_abs);

    let flags = series
        .points()
        .iter()
        .zip(&fit.residuals)
        .map(|(&(t, v), r)| {
            let residual = v - fit.predict(t);
            let z = if residual.abs() <= floor {
                T::zero()
            } else if scale <= floor {
                residual.signum() * T::infinity()
            } else {
                residual / scale
            };
            DeviationFlag {
                t,
                residual,
                z,
                flagged: z.abs() > z_threshold,
                side: if residual > T::zero() {
                    Side::AboveLine
                } else {
                    Side::BelowLine
                },
                included: r.included,
            }
        })
        .collect();

    Ok(DeviationReport {
        threshold: z_threshold,
        scale,
        flags,
    })
}
