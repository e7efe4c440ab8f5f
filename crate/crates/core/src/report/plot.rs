use crate::error::{Error, Result};
use crate::fit::LinearFit;
use crate::hyperbola::HyperbolicModel;
use crate::scalar::Real;
use crate::series::{reciprocal, TimeSeries};

/// Samples per overlay curve.
pub const CURVE_SAMPLES: usize = 200;
/// Overlays stop this fraction of the x-range short of a singularity.
pub const SINGULARITY_CLIP: f64 = 0.02;
/// Axis padding as a fraction of the data span.
pub const AXIS_MARGIN: f64 = 0.05;

pub const DEFAULT_WIDTH: u32 = 800;
pub const DEFAULT_HEIGHT: u32 = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log10,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayerKind {
    Points,
    Line,
    Curve,
}

impl LayerKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LayerKind::Points => "points",
            LayerKind::Line => "line",
            LayerKind::Curve => "curve",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub label: String,
    pub min: f64,
    pub max: f64,
    pub scale: Scale,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub kind: LayerKind,
    pub name: String,
    pub style: String,
    pub points: Vec<(f64, f64)>,
}

/// Backend-independent description of one figure.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotDocument {
    pub title: String,
    pub x_axis: Axis,
    pub y_axis: Axis,
    pub layers: Vec<Layer>,
    pub width: u32,
    pub height: u32,
}

/// Fitted object drawn over the data.
#[derive(Debug, Clone, PartialEq)]
pub enum Overlay<T> {
    /// Reciprocal-space line `a - k·t`.
    Line {
        name: String,
        a: T,
        k: T,
    },
    Model {
        name: String,
        model: HyperbolicModel<T>,
    },
}

impl<T: Real> Overlay<T> {
    pub fn from_fit(name: impl Into<String>, fit: &LinearFit<T>) -> Self {
        Overlay::Line {
            name: name.into(),
            a: fit.a,
            k: fit.k,
        }
    }

    pub fn from_model(name: impl Into<String>, model: HyperbolicModel<T>) -> Self {
        Overlay::Model {
            name: name.into(),
            model,
        }
    }

    fn name(&self) -> &str {
        match self {
            Overlay::Line { name, .. } | Overlay::Model { name, .. } => name,
        }
    }

    fn line(&self) -> (f64, f64, f64) {
        match self {
            Overlay::Line { a, k, .. } => (a.as_f64(), k.as_f64(), 1.0),
            Overlay::Model { model, .. } => (model.a().as_f64(), model.k().as_f64(), model.q().as_f64()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotOptions {
    pub title: String,
    pub scale: Scale,
    /// Plot `1/v` and overlay reciprocal lines instead of hyperbolas.
    pub reciprocal: bool,
    /// Also join each series' points with straight segments.
    pub connect: bool,
    pub width: u32,
    pub height: u32,
}

impl Default for PlotOptions {
    fn default() -> Self {
        Self {
            title: String::new(),
            scale: Scale::Linear,
            reciprocal: false,
            connect: false,
            width: DEFAULT_WIDTH,
            height: DEFAULT_HEIGHT,
        }
    }
}

/// Lays out data series and fitted overlays.
///
/// Axes are auto-ranged with 5% margins. Overlays are sampled across the
/// x-range but stop 2% of it short of a singularity; lines in reciprocal
/// mode are drawn by their two clipped endpoints, curves by 200 samples.
pub fn plot_series<T: Real>(
    series: &[TimeSeries<T>],
    overlays: &[Overlay<T>],
    options: &PlotOptions,
) -> Result<PlotDocument> {
    let first = series.first().ok_or(Error::InsufficientData { needed: 1, have: 0 })?;

    let mut layers = Vec::new();
    for (i, s) in series.iter().enumerate() {
        let shown = if options.reciprocal { reciprocal(s)? } else { s.clone() };
        let points: Vec<(f64, f64)> = shown.points().iter().map(|&(t, v)| (t.as_f64(), v.as_f64())).collect();
        if options.connect {
            layers.push(Layer {
                kind: LayerKind::Line,
                name: s.label().to_string(),
                style: format!("data-{i}"),
                points: points.clone(),
            });
        }
        layers.push(Layer {
            kind: LayerKind::Points,
            name: s.label().to_string(),
            style: format!("data-{i}"),
            points,
        });
    }

    let (x_min, x_max) = bounds(series.iter().flat_map(|s| s.years().map(Real::as_f64)));
    let (x_lo, x_hi) = padded(x_min, x_max);

    for (i, overlay) in overlays.iter().enumerate() {
        if let Some(layer) = overlay_layer(overlay, i, x_lo, x_hi, options.reciprocal) {
            layers.push(layer);
        }
    }

    let (y_min, y_max) = bounds(layers.iter().flat_map(|l| l.points.iter().map(|p| p.1)));
    let (y_lo, y_hi) = match options.scale {
        Scale::Linear => padded(y_min, y_max),
        Scale::Log10 => {
            for layer in &layers {
                if let Some(&(x, y)) = layer.points.iter().find(|p| !(p.1 > 0.0)) {
                    return Err(Error::LogScaleNonPositive {
                        layer: layer.name.clone(),
                        x,
                        value: y,
                    });
                }
            }
            let (lo, hi) = padded(y_min.log10(), y_max.log10());
            (10f64.powf(lo), 10f64.powf(hi))
        }
    };

    let unit = if options.reciprocal {
        format!("1/({})", first.unit())
    } else {
        first.unit().to_string()
    };
    Ok(PlotDocument {
        title: options.title.clone(),
        x_axis: Axis {
            label: "year".into(),
            min: x_lo,
            max: x_hi,
            scale: Scale::Linear,
        },
        y_axis: Axis {
            label: unit,
            min: y_lo,
            max: y_hi,
            scale: options.scale,
        },
        layers,
        width: options.width,
        height: options.height,
    })
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    let span = hi - lo;
    let pad = if span > 0.0 {
        AXIS_MARGIN * span
    } else if lo != 0.0 {
        AXIS_MARGIN * lo.abs()
    } else {
        1.0
    };
    (lo - pad, hi + pad)
}

/// Part of `[x_lo, x_hi]` where `a - k·t > 0`, kept 2% of the range away from the root.
fn positive_domain(a: f64, k: f64, x_lo: f64, x_hi: f64) -> Option<(f64, f64)> {
    let clip = SINGULARITY_CLIP * (x_hi - x_lo);
    let (mut start, mut end) = (x_lo, x_hi);
    if k > 0.0 {
        end = end.min(a / k - clip);
    } else if k < 0.0 {
        start = start.max(a / k + clip);
    } else if a <= 0.0 {
        return None;
    }
    (end > start).then_some((start, end))
}

fn overlay_layer<T: Real>(
    overlay: &Overlay<T>,
    index: usize,
    x_lo: f64,
    x_hi: f64,
    reciprocal_mode: bool,
) -> Option<Layer> {
    let (a, k, q) = overlay.line();
    let (start, end) = positive_domain(a, k, x_lo, x_hi)?;
    let style = format!("fit-{index}");
    let name = overlay.name().to_string();
    if reciprocal_mode && q == 1.0 {
        return Some(Layer {
            kind: LayerKind::Line,
            name,
            style,
            points: vec![(start, a - k * start), (end, a - k * end)],
        });
    }
    let value = |t: f64| {
        let base = a - k * t;
        match (reciprocal_mode, q == 1.0) {
            (true, _) => base.powf(q),
            (false, true) => base.recip(),
            (false, false) => base.powf(-q),
        }
    };
    let step = (end - start) / (CURVE_SAMPLES - 1) as f64;
    let points = (0..CURVE_SAMPLES)
        .map(|i| {
            let t = if i == CURVE_SAMPLES - 1 {
                end
            } else {
                start + step * i as f64
            };
            (t, value(t))
        })
        .collect();
    Some(Layer {
        kind: LayerKind::Curve,
        name,
        style,
        points,
    })
}

/// Keeps only `keep_years`, for the few-points-joined-by-lines display.
pub fn sparse_display<T: Real>(series: &TimeSeries<T>, keep_years: &[T]) -> Result<TimeSeries<T>> {
    let mut years = keep_years.to_vec();
    years.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    years.dedup();
    let points = years
        .into_iter()
        .map(|t| {
            series
                .value_at(t)
                .map(|v| (t, v))
                .ok_or(Error::MissingKeepYear { year: t.as_f64() })
        })
        .collect::<Result<Vec<_>>>()?;
    TimeSeries::new(series.label(), series.unit(), points)
}
