//! Seeded synthetic series for tests, demos and the acceptance suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::series::{reciprocal, TimeSeries};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` evenly spaced years starting at `start`.
pub fn year_grid(start: f64, step: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| start + step * i as f64).collect()
}

fn normal(sigma: f64) -> Result<Normal<f64>> {
    if !(sigma >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "sigma",
            reason: format!("must be finite and non-negative, got {sigma}"),
        });
    }
    Normal::new(0.0, sigma).map_err(|e| Error::InvalidParameter {
        name: "sigma",
        reason: e.to_string(),
    })
}

/// Noiseless `(a - k·t)^(-q)` at every year.
pub fn hyperbolic_samples(label: &str, a: f64, k: f64, q: f64, years: &[f64]) -> Result<TimeSeries<f64>> {
    let points = years.iter().map(|&t| (t, (a - k * t).powf(-q))).collect();
    TimeSeries::new(label, "synthetic units", points)
}

/// Reciprocal-space series `line(t) + N(0, sigma)`.
pub fn noisy_reciprocals<R: Rng>(
    label: &str,
    years: &[f64],
    line: impl Fn(f64) -> f64,
    sigma: f64,
    rng: &mut R,
) -> Result<TimeSeries<f64>> {
    let noise = normal(sigma)?;
    let points = years.iter().map(|&t| (t, line(t) + noise.sample(rng))).collect();
    TimeSeries::new(label, "1/(synthetic units)", points)
}

/// Continuous two-slope line: `a - k_left·(t - t0)` up to `years[break_index]`,
/// then falling at `k_right` from there.
pub fn kinked_line(years: &[f64], a: f64, k_left: f64, k_right: f64, break_index: usize) -> impl Fn(f64) -> f64 {
    let t0 = years[0];
    let tb = years[break_index];
    let yb = a - k_left * (tb - t0);
    move |t| {
        if t <= tb {
            a - k_left * (t - t0)
        } else {
            yb - k_right * (t - tb)
        }
    }
}

/// Fixture families produced by the `synth` subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    /// 20 samples of `1 / (10 - 0.01·t)` on `t = 0, 45, …, 855`.
    Hyperbolic,
    /// 30 years from 1000 step 10 whose reciprocals fall at 0.002/yr up to
    /// 1140 and at 0.01/yr afterwards.
    Piecewise,
    /// 20 samples of `1 / (10 - 0.01·t)` on `t = 0, 50, …, 950` with the
    /// final reciprocal raised by 0.2 (growth slowing below the hyperbola).
    Slowdown,
}

impl Fixture {
    pub fn name(self) -> &'static str {
        match self {
            Fixture::Hyperbolic => "hyperbolic",
            Fixture::Piecewise => "piecewise",
            Fixture::Slowdown => "slowdown",
        }
    }

    pub fn default_noise(self) -> f64 {
        match self {
            Fixture::Hyperbolic => 0.0,
            Fixture::Piecewise => 1e-3,
            Fixture::Slowdown => 1e-4,
        }
    }

    /// Level series (not reciprocals). `noise` is the standard deviation of
    /// Gaussian noise added in reciprocal space.
    pub fn generate(self, seed: u64, noise: f64) -> Result<TimeSeries<f64>> {
        let mut rng = seeded_rng(seed);
        let recip = match self {
            Fixture::Hyperbolic => {
                let years = year_grid(0.0, 45.0, 20);
                if noise == 0.0 {
                    return hyperbolic_samples(self.name(), 10.0, 0.01, 1.0, &years);
                }
                noisy_reciprocals(self.name(), &years, |t| 10.0 - 0.01 * t, noise, &mut rng)?
            }
            Fixture::Piecewise => {
                let years = year_grid(1000.0, 10.0, 30);
                let line = kinked_line(&years, 10.0, 0.002, 0.01, 14);
                noisy_reciprocals(self.name(), &years, line, noise, &mut rng)?
            }
            Fixture::Slowdown => {
                let years = year_grid(0.0, 50.0, 20);
                let line = |t: f64| 10.0 - 0.01 * t + if t > 900.0 { 0.2 } else { 0.0 };
                noisy_reciprocals(self.name(), &years, line, noise, &mut rng)?
            }
        };
        let level = reciprocal(&recip)?;
        TimeSeries::new(level.label(), "synthetic units", level.points().to_vec())
    }
}

impl std::str::FromStr for Fixture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hyperbolic" => Ok(Fixture::Hyperbolic),
            "piecewise" => Ok(Fixture::Piecewise),
            "slowdown" => Ok(Fixture::Slowdown),
            other => Err(Error::InvalidParameter {
                name: "kind",
                reason: format!("unknown fixture {other:?}; expected hyperbolic, piecewise or slowdown"),
            }),
        }
    }
}
