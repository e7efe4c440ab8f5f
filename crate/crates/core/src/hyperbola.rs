//! Hyperbolic growth `S(t) = (a - k·t)^(-q)` and its fitting via reciprocals.

use crate::error::{Error, Result};
use crate::fit::{fit_line, LinearFit};
use crate::scalar::Real;
use crate::series::{reciprocal, TimeSeries};

/// Exponent grid searched by [`fit_general_hyperbola`] when none is given.
pub const DEFAULT_Q_GRID: [f64; 5] = [0.5, 1.0, 1.5, 2.0, 3.0];

/// `S(t) = (a - k·t)^(-q)`, singular at `t_s = a / k` when `k > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicModel<T> {
    a: T,
    k: T,
    q: T,
    t_s: Option<T>,
}

impl<T: Real> HyperbolicModel<T> {
    pub fn new(a: T, k: T, q: T) -> Result<Self> {
        if !(q > T::zero()) || !q.is_finite() {
            return Err(Error::InvalidExponent { q: q.as_f64() });
        }
        if !a.is_finite() || !k.is_finite() {
            return Err(Error::InvalidParameter {
                name: "a, k",
                reason: format!("must be finite, got a = {a}, k = {k}"),
            });
        }
        if a <= T::zero() {
            return Err(Error::NonPositiveIntercept { a: a.as_f64() });
        }
        let t_s = (k > T::zero()).then(|| a / k);
        Ok(Self { a, k, q, t_s })
    }

    /// First-order model `1 / (a - k·t)`.
    pub fn first_order(a: T, k: T) -> Result<Self> {
        Self::new(a, k, T::one())
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn k(&self) -> T {
        self.k
    }

    pub fn q(&self) -> T {
        self.q
    }

    /// Singularity year; `None` when the reciprocal line never reaches zero going forward.
    pub fn t_s(&self) -> Option<T> {
        self.t_s
    }

    /// `a - k·t`, the linearised reciprocal at first order.
    pub fn base(&self, t: T) -> T {
        self.a - self.k * t
    }

    pub fn eval(&self, t: T) -> Result<T> {
        eval_hyperbola(self, t)
    }

    /// `(a - k·t)^q`, i.e. `1 / S(t)`.
    pub fn eval_reciprocal(&self, t: T) -> Result<T> {
        let base = self.checked_base(t)?;
        Ok(if self.q == T::one() { base } else { base.powf(self.q) })
    }

    fn checked_base(&self, t: T) -> Result<T> {
        let base = self.base(t);
        if base > T::zero() {
            Ok(base)
        } else {
            Err(Error::SingularityDomain {
                t: t.as_f64(),
                t_s: self.t_s.map(Real::as_f64),
            })
        }
    }
}

/// First-order model sharing the line's `(a, k)`.
pub fn hyperbola_from_line<T: Real>(fit: &LinearFit<T>) -> Result<HyperbolicModel<T>> {
    HyperbolicModel::first_order(fit.a, fit.k)
}

/// `(a - k·t)^(-q)`; rejected at or beyond the singularity.
pub fn eval_hyperbola<T: Real>(model: &HyperbolicModel<T>, t: T) -> Result<T> {
    let base = model.checked_base(t)?;
    Ok(if model.q == T::one() {
        base.recip()
    } else {
        base.powf(-model.q)
    })
}

/// Reciprocal, line fit and first-order reconstruction in one step.
pub fn fit_hyperbola<T: Real>(
    series: &TimeSeries<T>,
    exclude_after: Option<T>,
) -> Result<(HyperbolicModel<T>, LinearFit<T>)> {
    let fit = fit_line(&reciprocal(series)?, exclude_after)?;
    let model = hyperbola_from_line(&fit)?;
    Ok((model, fit))
}

/// Score of one exponent on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentCandidate<T> {
    pub q: T,
    /// Line fitted to `v^(-1/q)`.
    pub fit: LinearFit<T>,
    /// RSS of `(a - k·t)^(-q)` against the observed values over included points;
    /// `None` if the candidate is not positive across them.
    pub value_rss: Option<T>,
}

/// Result of the exponent grid search.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralFit<T> {
    pub model: HyperbolicModel<T>,
    /// Linearised fit of the selected exponent.
    pub fit: LinearFit<T>,
    pub candidates: Vec<ExponentCandidate<T>>,
    /// Index of the selected candidate.
    pub best: usize,
}

/// Grid search over the exponent `q`.
///
/// Each candidate linearises the data as `v^(-1/q) = a - k·t`, fits it by OLS
/// and is scored by RSS in the original value space so that scores for
/// different `q` are comparable. The first minimum in grid order wins.
pub fn fit_general_hyperbola<T: Real>(
    series: &TimeSeries<T>,
    q_grid: &[T],
    exclude_after: Option<T>,
) -> Result<GeneralFit<T>> {
    if q_grid.is_empty() {
        return Err(Error::EmptyExponentGrid);
    }
    if let Some(&q) = q_grid.iter().find(|q| !(**q > T::zero()) || !q.is_finite()) {
        return Err(Error::InvalidExponent { q: q.as_f64() });
    }
    let recip = reciprocal(series)?;

    let mut candidates = Vec::with_capacity(q_grid.len());
    let mut best: Option<(usize, T, HyperbolicModel<T>)> = None;
    for (i, &q) in q_grid.iter().enumerate() {
        let linearised = if q == T::one() {
            recip.clone()
        } else {
            let inv_q = q.recip();
            let points = recip.points().iter().map(|&(t, y)| (t, y.powf(inv_q))).collect();
            TimeSeries::new(recip.label(), recip.unit(), points)?
        };
        let fit = fit_line(&linearised, exclude_after)?;
        let scored = HyperbolicModel::new(fit.a, fit.k, q)
            .ok()
            .and_then(|model| value_space_rss(series, &model, exclude_after).map(|rss| (model, rss)));
        if let Some((model, rss)) = scored {
            if best.as_ref().is_none_or(|b| rss < b.1) {
                best = Some((i, rss, model));
            }
        }
        candidates.push(ExponentCandidate {
            q,
            fit,
            value_rss: scored.map(|s| s.1),
        });
    }

    let (best, _, model) = best.ok_or(Error::NoFeasibleExponent)?;
    Ok(GeneralFit {
        model,
        fit: candidates[best].fit.clone(),
        candidates,
        best,
    })
}

fn value_space_rss<T: Real>(series: &TimeSeries<T>, model: &HyperbolicModel<T>, exclude_after: Option<T>) -> Option<T> {
    let mut rss = T::zero();
    for &(t, v) in series.points() {
        if exclude_after.is_some_and(|cut| t > cut) {
            continue;
        }
        let d = v - eval_hyperbola(model, t).ok()?;
        rss = rss + d * d;
    }
    Some(rss)
}
