#![allow(dead_code)]

//! Independent reference computations in double-double arithmetic.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Unevaluated sum `hi + lo` carrying roughly 106 bits of precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi));
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::new(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

fn dd_sum(xs: impl Iterator<Item = Dd>) -> Dd {
    xs.fold(Dd::ZERO, |acc, x| acc + x)
}

/// Two-pass OLS of `y = a - k·t` evaluated in double-double.
/// Returns `(a, k, rss)`.
pub fn ols(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = Dd::new(points.len() as f64);
    let mean_t = dd_sum(points.iter().map(|p| Dd::new(p.0))) / n;
    let mean_y = dd_sum(points.iter().map(|p| Dd::new(p.1))) / n;
    let sxx = dd_sum(points.iter().map(|p| {
        let d = Dd::new(p.0) - mean_t;
        d * d
    }));
    let sxy = dd_sum(points.iter().map(|p| (Dd::new(p.0) - mean_t) * (Dd::new(p.1) - mean_y)));
    let slope = sxy / sxx;
    let a = mean_y - slope * mean_t;
    let rss = dd_sum(points.iter().map(|p| {
        let r = Dd::new(p.1) - (a + slope * Dd::new(p.0));
        r * r
    }));
    (a.to_f64(), -slope.to_f64(), rss.to_f64())
}

/// Value-space RSS of `(a - k·t)^(-q)` against the raw values, with the
/// linearised line fitted by [`ols`]. `None` when the fitted base is not
/// positive at every sample year.
pub fn value_rss(points: &[(f64, f64)], q: f64) -> Option<f64> {
    let lin: Vec<(f64, f64)> = points.iter().map(|&(t, v)| (t, v.powf(-1.0 / q))).collect();
    let (a, k, _) = ols(&lin);
    if points.iter().any(|&(t, _)| a - k * t <= 0.0) {
        return None;
    }
    Some(
        points
            .iter()
            .map(|&(t, v)| {
                let r = v - (a - k * t).powf(-q);
                r * r
            })
            .sum(),
    )
}

/// Every way to cut `0..n` into at most `max` contiguous runs of at least
/// `min` points, by brute force over boundary positions.
pub fn brute_force_splits(n: usize, max: usize, min: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << (n - 1)) {
        let cuts: Vec<usize> = (1..n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        if cuts.len() + 1 > max {
            continue;
        }
        let mut edges = vec![0];
        edges.extend(&cuts);
        edges.push(n);
        let runs: Vec<(usize, usize)> = edges.windows(2).map(|w| (w[0], w[1])).collect();
        if runs.iter().all(|(s, e)| e - s >= min) {
            out.push(runs);
        }
    }
    out
}

/// Minimum-BIC segmentation by brute force, ties to fewer segments then
/// earlier first boundary. Returns the boundary years (last year of each
/// non-final segment).
pub fn brute_force_best(points: &[(f64, f64)], max: usize, min: usize) -> Vec<f64> {
    let n = points.len();
    let nf = n as f64;
    let mut best: Option<(f64, usize, Vec<usize>, Vec<f64>)> = None;
    for runs in brute_force_splits(n, max, min) {
        let rss: f64 = runs.iter().map(|&(s, e)| ols(&points[s..e]).2).sum();
        let params = 3 * runs.len() - 1;
        let bic = nf * (rss / nf).ln() + params as f64 * nf.ln();
        let cuts: Vec<usize> = runs[..runs.len() - 1].iter().map(|r| r.1).collect();
        let years: Vec<f64> = cuts.iter().map(|&c| points[c - 1].0).collect();
        let better = match &best {
            None => true,
            Some((b, segs, c, _)) => {
                bic < *b || (bic == *b && (runs.len() < *segs || (runs.len() == *segs && cuts < *c)))
            }
        };
        if better {
            best = Some((bic, runs.len(), cuts, years));
        }
    }
    best.unwrap().3
}

pub fn rel_err(x: f64, truth: f64) -> f64 {
    if truth == 0.0 {
        x.abs()
    } else {
        ((x - truth) / truth).abs()
    }
}
