use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::series::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Monotone,
    Violated,
}

/// Adjacent pair moving against the expected direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation<T> {
    pub t_prev: T,
    pub t_next: T,
    pub v_prev: T,
    pub v_next: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport<T> {
    pub direction: Direction,
    pub violations: Vec<Violation<T>>,
    pub tolerance: T,
    pub verdict: Monotonicity,
}

/// Checks every adjacent pair; a move against `direction` larger than
/// `rel_tolerance·|v_prev|` is a violation. Ties are never violations.
pub fn monotonicity_report<T: Real>(
    series: &TimeSeries<T>,
    direction: Direction,
    rel_tolerance: T,
) -> Result<MonotonicityReport<T>> {
    if series.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            have: series.len(),
        });
    }
    if !(rel_tolerance >= T::zero()) {
        return Err(Error::InvalidParameter {
            name: "rel_tolerance",
            reason: format!("must be non-negative, got {rel_tolerance}"),
        });
    }
    let violations: Vec<_> = series
        .points()
        .windows(2)
        .filter_map(|w| {
            let ((t_prev, v_prev), (t_next, v_next)) = (w[0], w[1]);
            let against = match direction {
                Direction::Decreasing => v_next - v_prev,
                Direction::Increasing => v_prev - v_next,
            };
            (against > rel_tolerance * v_prev.abs()).then_some(Violation {
                t_prev,
                t_next,
                v_prev,
                v_next,
            })
        })
        .collect();
    let verdict = if violations.is_empty() {
        Monotonicity::Monotone
    } else {
        Monotonicity::Violated
    };
    Ok(MonotonicityReport {
        direction,
        violations,
        tolerance: rel_tolerance,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(points: &[(f64, f64)]) -> TimeSeries<f64> {
        TimeSeries::new("s", "u", points.to_vec()).unwrap()
    }

    #[test]
    fn strictly_decreasing() {
        let r = monotonicity_report(
            &series(&[(0.0, 10.0), (1.0, 9.0), (2.0, 8.0)]),
            Direction::Decreasing,
            0.0,
        )
        .unwrap();
        assert_eq!(r.verdict, Monotonicity::Monotone);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn one_violation() {
        let r = monotonicity_report(
            &series(&[(0.0, 10.0), (1.0, 11.0), (2.0, 8.0)]),
            Direction::Decreasing,
            0.0,
        )
        .unwrap();
        assert_eq!(r.verdict, Monotonicity::Violated);
        assert_eq!(
            r.violations,
            vec![Violation {
                t_prev: 0.0,
                t_next: 1.0,
                v_prev: 10.0,
                v_next: 11.0
            }]
        );
    }

    #[test]
    fn rise_within_slack() {
        let s = series(&[(0.0, 10.0), (1.0, 10.0005), (2.0, 9.0)]);
        let r = monotonicity_report(&s, Direction::Decreasing, 1e-3).unwrap();
        assert_eq!(r.verdict, Monotonicity::Monotone);
        let strict = monotonicity_report(&s, Direction::Decreasing, 0.0).unwrap();
        assert_eq!(strict.violations.len(), 1);
    }

    #[test]
    fn increasing_direction_and_short_input() {
        let s = series(&[(0.0, 1.0), (1.0, 2.0), (2.0, 1.5)]);
        let r = monotonicity_report(&s, Direction::Increasing, 0.0).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].t_prev, 1.0);
        assert!(monotonicity_report(&series(&[(0.0, 1.0)]), Direction::Increasing, 0.0).is_err());
    }
}
