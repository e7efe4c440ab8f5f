//! Ordered `(year, value)` observations.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Unit tag used when a source does not declare one.
pub const UNSPECIFIED_UNIT: &str = "unspecified";

/// Positive observations on a strictly increasing grid of years (CE, real valued).
///
/// Construction validates the ordering and positivity, so every series in
/// circulation can be reciprocated and drawn on a log axis.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries<T> {
    label: String,
    unit: String,
    points: Vec<(T, T)>,
}

impl<T: Real> TimeSeries<T> {
    /// Builds a series from points that must already be sorted by year.
    pub fn new(label: impl Into<String>, unit: impl Into<String>, points: Vec<(T, T)>) -> Result<Self> {
        for &(t, v) in &points {
            if !t.is_finite() {
                return Err(Error::NonFinite {
                    year: t.as_f64(),
                    what: "year",
                });
            }
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    year: t.as_f64(),
                    what: "value",
                });
            }
            if v <= T::zero() {
                return Err(Error::NonPositiveValue {
                    year: t.as_f64(),
                    value: v.as_f64(),
                });
            }
        }
        for pair in points.windows(2) {
            let (prev, next) = (pair[0].0, pair[1].0);
            if prev == next {
                return Err(Error::DuplicateYear { year: prev.as_f64() });
            }
            if prev > next {
                return Err(Error::UnorderedYears {
                    prev: prev.as_f64(),
                    next: next.as_f64(),
                });
            }
        }
        Ok(Self {
            label: label.into(),
            unit: unit.into(),
            points,
        })
    }

    /// Like [`TimeSeries::new`] but sorts by year first. Duplicates are still rejected.
    pub fn from_unsorted(label: impl Into<String>, unit: impl Into<String>, mut points: Vec<(T, T)>) -> Result<Self> {
        points.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal));
        Self::new(label, unit, points)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn unit(&self) -> &str {
        &self.unit
    }

    pub fn points(&self) -> &[(T, T)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn years(&self) -> impl ExactSizeIterator<Item = T> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn values(&self) -> impl ExactSizeIterator<Item = T> + '_ {
        self.points.iter().map(|p| p.1)
    }

    /// Value observed at exactly `year`, if any.
    pub fn value_at(&self, year: T) -> Option<T> {
        self.points
            .binary_search_by(|p| p.0.partial_cmp(&year).unwrap_or(std::cmp::Ordering::Less))
            .ok()
            .map(|i| self.points[i].1)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Points with year `<= last_year`, keeping label and unit.
    pub fn truncate_after(&self, last_year: T) -> Result<Self> {
        let points = self.points.iter().copied().filter(|p| p.0 <= last_year).collect();
        Self::new(self.label.clone(), self.unit.clone(), points)
    }

    /// Applies `f` to every year. `f` must be strictly increasing.
    pub fn map_years(&self, f: impl Fn(T) -> T) -> Result<Self> {
        let points = self.points.iter().map(|&(t, v)| (f(t), v)).collect();
        Self::new(self.label.clone(), self.unit.clone(), points)
    }
}

/// Replaces every value by its reciprocal and wraps the unit as `1/(unit)`.
///
/// Fails if a reciprocal is not representable (overflow to infinity), naming the year.
pub fn reciprocal<T: Real>(series: &TimeSeries<T>) -> Result<TimeSeries<T>> {
    let mut points = Vec::with_capacity(series.len());
    for &(t, v) in series.points() {
        if v <= T::zero() {
            return Err(Error::NonPositiveValue {
                year: t.as_f64(),
                value: v.as_f64(),
            });
        }
        points.push((t, v.recip()));
    }
    TimeSeries::new(series.label.clone(), format!("1/({})", series.unit), points)
}
