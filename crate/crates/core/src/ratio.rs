//! Per-capita trajectory as the quotient of two hyperbolic fits.

use crate::error::{Error, Result};
use crate::hyperbola::{eval_hyperbola, HyperbolicModel};
use crate::scalar::Real;

/// `numerator(t) / denominator(t)` sampled on a grid of years.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioTrajectory<T> {
    pub numerator: HyperbolicModel<T>,
    pub denominator: HyperbolicModel<T>,
    pub grid: Vec<T>,
    pub values: Vec<T>,
}

impl<T: Real> RatioTrajectory<T> {
    pub fn points(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.grid.iter().copied().zip(self.values.iter().copied())
    }
}

/// Divides the GDP model by the population model at every grid year.
///
/// Every grid year must lie strictly inside both models' domains.
pub fn ratio_trajectory<T: Real>(
    gdp: &HyperbolicModel<T>,
    pop: &HyperbolicModel<T>,
    grid: &[T],
) -> Result<RatioTrajectory<T>> {
    let values = grid
        .iter()
        .map(|&t| {
            let g = eval_hyperbola(gdp, t).map_err(|_| domain_error("numerator (GDP)", gdp, t))?;
            let s = eval_hyperbola(pop, t).map_err(|_| domain_error("denominator (population)", pop, t))?;
            Ok(g / s)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RatioTrajectory {
        numerator: *gdp,
        denominator: *pop,
        grid: grid.to_vec(),
        values,
    })
}

fn domain_error<T: Real>(model: &'static str, m: &HyperbolicModel<T>, t: T) -> Error {
    Error::RatioDomain {
        model,
        year: t.as_f64(),
        t_s: m.t_s().map(Real::as_f64),
    }
}
