use std::ops::Range;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::series::TimeSeries;
use crate::special::f_sf;

use super::report::{rss_floor, BreakReport, Segmentation};

/// Points required strictly on each side of a tested break year.
pub const CHOW_MIN_SIDE_POINTS: usize = 3;

/// Parameters per regression (intercept and slope).
const LINE_PARAMS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChowResult<T> {
    pub break_year: T,
    /// May be `+inf` when both split fits are exact but the pooled one is not.
    pub f: T,
    pub p_value: T,
    /// `(p, n - 2p)` with `p = 2`.
    pub dof: (usize, usize),
    pub rss_pooled: T,
    pub rss_left: T,
    pub rss_right: T,
}

/// Chow test for a change of line at `break_year`.
///
/// Points up to and including `break_year` form the left sample. When both
/// split fits and the pooled fit are exact to rounding noise the statistic is
/// defined as `F = 0`, `p = 1`.
pub fn chow_test<T: Real>(series: &TimeSeries<T>, break_year: T) -> Result<BreakReport<T>> {
    let points = series.points();
    let n = points.len();
    let before = points.iter().filter(|p| p.0 < break_year).count();
    let after = points.iter().filter(|p| p.0 > break_year).count();
    for (side, have) in [("left", before), ("right", after)] {
        if have < CHOW_MIN_SIDE_POINTS {
            return Err(Error::ChowSideTooShort {
                side,
                break_year: break_year.as_f64(),
                have,
                needed: CHOW_MIN_SIDE_POINTS,
            });
        }
    }
    let split = n - after;

    let floor = rss_floor(points);
    let pooled = Segmentation::fit(points, vec![Range { start: 0, end: n }], floor)?;
    let two = Segmentation::fit(points, vec![0..split, split..n], floor)?;

    let rss_pooled = pooled.rss;
    let (rss_left, rss_right) = (two.segments[0].rss, two.segments[1].rss);
    let unrestricted = rss_left + rss_right;
    let dof = (LINE_PARAMS, n - 2 * LINE_PARAMS);

    let f = if unrestricted <= floor {
        if rss_pooled <= floor {
            T::zero()
        } else {
            T::infinity()
        }
    } else {
        let gain = (rss_pooled - unrestricted).max(T::zero());
        (gain / T::count(dof.0)) / (unrestricted / T::count(dof.1))
    };
    let p_value = f_sf(f, T::count(dof.0), T::count(dof.1)).max(T::zero()).min(T::one());

    let chow = ChowResult {
        break_year,
        f,
        p_value,
        dof,
        rss_pooled,
        rss_left,
        rss_right,
    };
    BreakReport::assemble(n, vec![break_year], Some(chow), vec![pooled, two])
}
