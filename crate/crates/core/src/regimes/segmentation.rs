use std::ops::Range;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::series::TimeSeries;

use super::report::{rss_floor, BreakReport, Segmentation};

pub const MAX_SEGMENTS: usize = 3;
/// Smallest admissible segment.
pub const MIN_SEGMENT_POINTS: usize = 3;

/// Exhaustive BIC-scored search over segmentations of up to `max_segments`
/// independently fitted lines.
///
/// Breakpoints sit at observed years and each boundary point belongs to the
/// segment on its left. Every admissible segmentation is kept in the report.
pub fn scan_breakpoints<T: Real>(
    series: &TimeSeries<T>,
    max_segments: usize,
    min_segment_points: usize,
) -> Result<BreakReport<T>> {
    if !(1..=MAX_SEGMENTS).contains(&max_segments) {
        return Err(Error::InvalidParameter {
            name: "max_segments",
            reason: format!("must be between 1 and {MAX_SEGMENTS}, got {max_segments}"),
        });
    }
    if min_segment_points < MIN_SEGMENT_POINTS {
        return Err(Error::InvalidParameter {
            name: "min_segment_points",
            reason: format!("must be at least {MIN_SEGMENT_POINTS}, got {min_segment_points}"),
        });
    }
    let points = series.points();
    let n = points.len();
    if n < min_segment_points {
        return Err(Error::SeriesTooShort {
            have: n,
            min: min_segment_points,
        });
    }

    let floor = rss_floor(points);
    let segmentations = admissible_splits(n, max_segments, min_segment_points)
        .into_iter()
        .map(|ranges| Segmentation::fit(points, ranges, floor))
        .collect::<Result<Vec<_>>>()?;

    let mut candidate_breaks: Vec<T> = segmentations
        .iter()
        .flat_map(|s| s.boundaries.iter().copied())
        .collect();
    candidate_breaks.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    candidate_breaks.dedup();

    BreakReport::assemble(n, candidate_breaks, None, segmentations)
}

/// All partitions of `0..n` into 1..=`max_segments` contiguous runs of at least
/// `min_len` points, fewer segments first, then lexicographic by boundary.
pub(crate) fn admissible_splits(n: usize, max_segments: usize, min_len: usize) -> Vec<Vec<Range<usize>>> {
    let mut out = Vec::new();
    for segments in 1..=max_segments {
        let mut cuts = Vec::with_capacity(segments - 1);
        extend_splits(0, n, segments, min_len, &mut cuts, &mut out);
    }
    out
}

fn extend_splits(
    start: usize,
    n: usize,
    remaining: usize,
    min_len: usize,
    cuts: &mut Vec<usize>,
    out: &mut Vec<Vec<Range<usize>>>,
) {
    if remaining == 1 {
        if n - start >= min_len {
            let mut ranges = Vec::with_capacity(cuts.len() + 1);
            let mut lo = 0;
            for &c in cuts.iter() {
                ranges.push(lo..c);
                lo = c;
            }
            ranges.push(lo..n);
            out.push(ranges);
        }
        return;
    }
    let Some(last_cut) = n.checked_sub((remaining - 1) * min_len) else {
        return;
    };
    for cut in start + min_len..=last_cut {
        cuts.push(cut);
        extend_splits(cut, n, remaining - 1, min_len, cuts, out);
        cuts.pop();
    }
}
