//! Ordinary least squares for the decreasing line `y = a - k·t`.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::series::TimeSeries;

/// Observed minus fitted value at one year.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual<T> {
    pub t: T,
    pub residual: T,
    /// Whether the point took part in the estimation.
    pub included: bool,
}

/// Least-squares line `y(t) = a - k·t` with residual diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFit<T> {
    /// Intercept at year zero.
    pub a: T,
    /// Decline per year; positive for a falling line.
    pub k: T,
    /// Residual sum of squares over included points.
    pub rss: T,
    /// Coefficient of determination; 0 when the included values are constant.
    pub r2: T,
    /// Number of points used in the estimation.
    pub n: usize,
    /// One entry per input point, included or not.
    pub residuals: Vec<Residual<T>>,
    /// Years left out of the estimation.
    pub excluded: Vec<T>,
    /// Set when the total sum of squares is zero and `r2` was defined as 0.
    pub degenerate: bool,
}

impl<T: Real> LinearFit<T> {
    /// Fits every point of `points` (which need not come from a validated series).
    pub fn from_points(points: &[(T, T)]) -> Result<Self> {
        Self::estimate(points, &[])
    }

    /// Value of the fitted line at `t`.
    pub fn predict(&self, t: T) -> T {
        self.a - self.k * t
    }

    /// Year at which the line reaches zero, if it is falling.
    pub fn zero_crossing(&self) -> Option<T> {
        (self.k > T::zero()).then(|| self.a / self.k)
    }

    pub fn included_residuals(&self) -> impl Iterator<Item = &Residual<T>> {
        self.residuals.iter().filter(|r| r.included)
    }

    fn estimate(included: &[(T, T)], excluded: &[(T, T)]) -> Result<Self> {
        let n = included.len();
        if n < 2 {
            return Err(Error::InsufficientData { needed: 2, have: n });
        }
        let nf = T::count(n);
        let t_mean = included.iter().map(|p| p.0).sum::<T>() / nf;
        let y_mean = included.iter().map(|p| p.1).sum::<T>() / nf;

        let mut sxx = T::zero();
        let mut sxy = T::zero();
        let mut tss = T::zero();
        for &(t, y) in included {
            let dt = t - t_mean;
            let dy = y - y_mean;
            sxx = sxx + dt * dt;
            sxy = sxy + dt * dy;
            tss = tss + dy * dy;
        }
        if sxx == T::zero() {
            return Err(Error::DegenerateDesign);
        }
        let slope = sxy / sxx;
        let k = -slope;
        let a = y_mean - slope * t_mean;

        let residual = |t: T, y: T| (y - y_mean) - slope * (t - t_mean);
        let mut residuals: Vec<Residual<T>> = included
            .iter()
            .map(|&(t, y)| Residual {
                t,
                residual: residual(t, y),
                included: true,
            })
            .chain(excluded.iter().map(|&(t, y)| Residual {
                t,
                residual: residual(t, y),
                included: false,
            }))
            .collect();
        residuals.sort_by(|x, y| x.t.partial_cmp(&y.t).unwrap_or(std::cmp::Ordering::Equal));

        let rss = residuals
            .iter()
            .filter(|r| r.included)
            .map(|r| r.residual * r.residual)
            .sum::<T>();
        let degenerate = tss == T::zero();
        let r2 = if degenerate {
            T::zero()
        } else {
            (T::one() - rss / tss).max(T::zero()).min(T::one())
        };

        Ok(Self {
            a,
            k,
            rss,
            r2,
            n,
            residuals,
            excluded: excluded.iter().map(|p| p.0).collect(),
            degenerate,
        })
    }
}

/// Fits `y = a - k·t` by unweighted OLS.
///
/// Points later than `exclude_after` are left out of the estimation but still
/// receive residuals against the fitted line.
pub fn fit_line<T: Real>(series: &TimeSeries<T>, exclude_after: Option<T>) -> Result<LinearFit<T>> {
    let (included, excluded): (Vec<_>, Vec<_>) = series
        .points()
        .iter()
        .partition(|p| exclude_after.is_none_or(|cut| p.0 <= cut));
    LinearFit::estimate(&included, &excluded)
}
