use std::fmt::Write;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::report::{BreakReport, Segmentation, Verdict};

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeVerdict<T> {
    pub verdict: Verdict<T>,
    /// Best segmentation with a different number of segments than the winner.
    pub runner_up: Option<usize>,
    /// `BIC(runner_up) - BIC(best)`, non-negative.
    pub delta_bic: Option<T>,
    pub summary: String,
}

/// Reads the verdict off a report and writes a one-paragraph summary.
pub fn regime_verdict<T: Real>(report: &BreakReport<T>) -> Result<RegimeVerdict<T>> {
    if report.segmentations.is_empty() || report.best >= report.segmentations.len() {
        return Err(Error::EmptySegmentations);
    }
    let best = report.best_segmentation();
    let runner_up = report
        .segmentations
        .iter()
        .enumerate()
        .filter(|(_, s)| s.segment_count() != best.segment_count())
        .min_by(|(_, x), (_, y)| x.bic.partial_cmp(&y.bic).unwrap_or(std::cmp::Ordering::Equal))
        .map(|(i, _)| i);
    let delta_bic = runner_up.map(|i| report.segmentations[i].bic - best.bic);

    let mut summary = format!("{}: best segmentation {}", report.verdict, describe(best));
    match (runner_up, delta_bic) {
        (Some(i), Some(delta)) => {
            let _ = write!(
                summary,
                "; runner-up {}, delta BIC {:.3}",
                describe(&report.segmentations[i]),
                delta.as_f64()
            );
        }
        _ => summary.push_str("; no alternative segment count evaluated"),
    }
    if let Some(chow) = &report.chow {
        let _ = write!(
            summary,
            "; Chow test at {}: F({}, {}) = {:.4}, p = {:.4e}",
            chow.break_year,
            chow.dof.0,
            chow.dof.1,
            chow.f.as_f64(),
            chow.p_value.as_f64()
        );
    }

    Ok(RegimeVerdict {
        verdict: report.verdict.clone(),
        runner_up,
        delta_bic,
        summary,
    })
}

fn describe<T: Real>(s: &Segmentation<T>) -> String {
    let mut out = format!(
        "{} segment{}",
        s.segment_count(),
        if s.segment_count() == 1 { "" } else { "s" }
    );
    if !s.boundaries.is_empty() {
        let years: Vec<String> = s.boundaries.iter().map(|b| b.to_string()).collect();
        let _ = write!(out, " (breaks after {})", years.join(", "));
    }
    let _ = write!(out, " BIC {:.3}", s.bic.as_f64());
    out
}
