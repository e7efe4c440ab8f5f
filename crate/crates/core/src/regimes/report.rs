use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::fit::LinearFit;
use crate::scalar::{noise_floor, Real};

use super::chow::ChowResult;

/// Piecewise-linear description of a reciprocal series.
#[derive(Debug, Clone, PartialEq)]
pub struct Segmentation<T> {
    /// Last year of every segment but the final one.
    pub boundaries: Vec<T>,
    /// Point index range covered by each segment.
    pub ranges: Vec<Range<usize>>,
    pub segments: Vec<LinearFit<T>>,
    pub rss: T,
    pub params: usize,
    pub bic: T,
}

impl<T: Real> Segmentation<T> {
    /// Fits each contiguous range independently and scores the whole by BIC.
    ///
    /// `rss_floor` is the rounding-noise level below which total RSS is
    /// treated as exactly that level, so noiseless fits tie instead of
    /// competing on round-off.
    pub(crate) fn fit(points: &[(T, T)], ranges: Vec<Range<usize>>, rss_floor: T) -> Result<Self> {
        let segments = ranges
            .iter()
            .map(|r| LinearFit::from_points(&points[r.clone()]))
            .collect::<Result<Vec<_>>>()?;
        let boundaries = ranges[..ranges.len() - 1].iter().map(|r| points[r.end - 1].0).collect();
        let rss = segments.iter().map(|s| s.rss).sum::<T>();
        let params = 3 * segments.len() - 1;
        Ok(Self {
            boundaries,
            ranges,
            segments,
            rss,
            params,
            bic: bic(points.len(), rss.max(rss_floor), params),
        })
    }

    pub fn segment_count(&self) -> usize {
        self.segments.len()
    }
}

/// `n·ln(rss/n) + params·ln(n)`.
pub fn bic<T: Real>(n: usize, rss: T, params: usize) -> T {
    let nf = T::count(n);
    nf * (rss / nf).ln() + T::count(params) * nf.ln()
}

/// Rounding-noise level of a total RSS over `points`.
pub(crate) fn rss_floor<T: Real>(points: &[(T, T)]) -> T {
    let n = T::count(points.len());
    let mean_abs = points.iter().map(|p| p.1.abs()).sum::<T>() / n;
    let floor = noise_floor(mean_abs);
    n * floor * floor
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict<T> {
    OneStage,
    /// Break years (last year of each non-final regime).
    MultiStage(Vec<T>),
}

impl<T> Verdict<T> {
    pub fn is_one_stage(&self) -> bool {
        matches!(self, Verdict::OneStage)
    }

    /// Machine-readable key used in reports.
    pub fn key(&self) -> &'static str {
        match self {
            Verdict::OneStage => "one_stage",
            Verdict::MultiStage(_) => "multi_stage",
        }
    }
}

impl<T: fmt::Display> fmt::Display for Verdict<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::OneStage => f.write_str("OneStage"),
            Verdict::MultiStage(breaks) => {
                f.write_str("MultiStage [")?;
                for (i, b) in breaks.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{b}")?;
                }
                f.write_str("]")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BreakReport<T> {
    pub n: usize,
    pub candidate_breaks: Vec<T>,
    pub chow: Option<ChowResult<T>>,
    pub segmentations: Vec<Segmentation<T>>,
    /// Index of the minimum-BIC segmentation.
    pub best: usize,
    pub verdict: Verdict<T>,
}

impl<T: Real> BreakReport<T> {
    pub(crate) fn assemble(
        n: usize,
        candidate_breaks: Vec<T>,
        chow: Option<ChowResult<T>>,
        segmentations: Vec<Segmentation<T>>,
    ) -> Result<Self> {
        let best = (0..segmentations.len())
            .min_by(|&i, &j| compare(&segmentations[i], &segmentations[j]))
            .ok_or(Error::EmptySegmentations)?;
        let chosen = &segmentations[best];
        let verdict = if chosen.segment_count() == 1 {
            Verdict::OneStage
        } else {
            Verdict::MultiStage(chosen.boundaries.clone())
        };
        Ok(Self {
            n,
            candidate_breaks,
            chow,
            segmentations,
            best,
            verdict,
        })
    }

    pub fn best_segmentation(&self) -> &Segmentation<T> {
        &self.segmentations[self.best]
    }
}

/// Lower BIC first; ties go to fewer segments, then earlier breakpoints.
fn compare<T: Real>(x: &Segmentation<T>, y: &Segmentation<T>) -> Ordering {
    x.bic
        .partial_cmp(&y.bic)
        .unwrap_or(Ordering::Equal)
        .then(x.segment_count().cmp(&y.segment_count()))
        .then_with(|| {
            x.boundaries
                .iter()
                .zip(&y.boundaries)
                .map(|(a, b)| a.partial_cmp(b).unwrap_or(Ordering::Equal))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
}
