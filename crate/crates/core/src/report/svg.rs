use std::fmt::Write;

use super::plot::{Axis, LayerKind, PlotDocument, Scale};

const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 56.0;
const TICK_LEN: f64 = 5.0;
const MARKER_RADIUS: f64 = 3.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Renders a self-contained SVG 1.1 document.
///
/// Output depends only on `doc`: layers are emitted in order and every
/// coordinate is printed with three fractional digits.
pub fn render_svg(doc: &PlotDocument) -> String {
    let frame = Frame::new(doc);
    let mut out = String::new();
    let (w, h) = (doc.width, doc.height);
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(out, "<title>{}</title>", escape(&doc.title));
    let _ = writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"#ffffff\"/>"
    );

    frame.axes(doc, &mut out);

    for (i, layer) in doc.layers.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(
            out,
            "<g id=\"layer-{i}\" class=\"{} {}\" data-name=\"{}\">",
            layer.kind.as_str(),
            escape(&layer.style),
            escape(&layer.name)
        );
        match layer.kind {
            LayerKind::Points => {
                for &(x, y) in &layer.points {
                    let _ = writeln!(
                        out,
                        "<circle cx=\"{}\" cy=\"{}\" r=\"{MARKER_RADIUS:.3}\" fill=\"{color}\"/>",
                        fmt(frame.px(x)),
                        fmt(frame.py(y))
                    );
                }
            }
            LayerKind::Line | LayerKind::Curve => {
                let coords: Vec<String> = layer
                    .points
                    .iter()
                    .map(|&(x, y)| format!("{},{}", fmt(frame.px(x)), fmt(frame.py(y))))
                    .collect();
                let dash = if layer.kind == LayerKind::Line && layer.style.starts_with("fit") {
                    " stroke-dasharray=\"6 3\""
                } else {
                    ""
                };
                let _ = writeln!(
                    out,
                    "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.500\"{dash}/>",
                    coords.join(" ")
                );
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

fn fmt(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

struct Frame {
    left: f64,
    right: f64,
    top: f64,
    bottom: f64,
    x: (f64, f64),
    y: (f64, f64),
    log_y: bool,
}

impl Frame {
    fn new(doc: &PlotDocument) -> Self {
        let log_y = doc.y_axis.scale == Scale::Log10;
        let y = if log_y {
            (doc.y_axis.min.log10(), doc.y_axis.max.log10())
        } else {
            (doc.y_axis.min, doc.y_axis.max)
        };
        Self {
            left: MARGIN_LEFT,
            right: f64::from(doc.width) - MARGIN_RIGHT,
            top: MARGIN_TOP,
            bottom: f64::from(doc.height) - MARGIN_BOTTOM,
            x: (doc.x_axis.min, doc.x_axis.max),
            y,
            log_y,
        }
    }

    fn px(&self, x: f64) -> f64 {
        let span = self.x.1 - self.x.0;
        let f = if span > 0.0 { (x - self.x.0) / span } else { 0.5 };
        self.left + f * (self.right - self.left)
    }

    fn py(&self, y: f64) -> f64 {
        let y = if self.log_y { y.log10() } else { y };
        let span = self.y.1 - self.y.0;
        let f = if span > 0.0 { (y - self.y.0) / span } else { 0.5 };
        self.bottom - f * (self.bottom - self.top)
    }

    fn axes(&self, doc: &PlotDocument, out: &mut String) {
        out.push_str("<g class=\"axes\" stroke=\"#000000\" stroke-width=\"1.000\">\n");
        let _ = writeln!(
            out,
            "<line x1=\"{l}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\"/>\n<line x1=\"{l}\" y1=\"{t}\" x2=\"{l}\" y2=\"{b}\"/>",
            l = fmt(self.left),
            r = fmt(self.right),
            t = fmt(self.top),
            b = fmt(self.bottom)
        );
        for (value, label) in linear_ticks(&doc.x_axis) {
            let x = fmt(self.px(value));
            let _ = writeln!(
                out,
                "<line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\"/>\n<text x=\"{x}\" y=\"{}\" text-anchor=\"middle\" font-size=\"11\" stroke=\"none\">{label}</text>",
                fmt(self.bottom),
                fmt(self.bottom + TICK_LEN),
                fmt(self.bottom + TICK_LEN + 13.0)
            );
        }
        let y_ticks = match doc.y_axis.scale {
            Scale::Linear => linear_ticks(&doc.y_axis),
            Scale::Log10 => decade_ticks(&doc.y_axis),
        };
        for (value, label) in y_ticks {
            let y = fmt(self.py(value));
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\"/>\n<text x=\"{}\" y=\"{y}\" text-anchor=\"end\" dominant-baseline=\"middle\" font-size=\"11\" stroke=\"none\">{label}</text>",
                fmt(self.left - TICK_LEN),
                fmt(self.left),
                fmt(self.left - TICK_LEN - 3.0)
            );
        }
        out.push_str("</g>\n");
        let mid_x = fmt((self.left + self.right) / 2.0);
        let mid_y = fmt((self.top + self.bottom) / 2.0);
        let _ = writeln!(
            out,
            "<text x=\"{mid_x}\" y=\"{}\" text-anchor=\"middle\" font-size=\"14\">{}</text>",
            fmt(self.top / 2.0 + 5.0),
            escape(&doc.title)
        );
        let _ = writeln!(
            out,
            "<text x=\"{mid_x}\" y=\"{}\" text-anchor=\"middle\" font-size=\"12\">{}</text>",
            fmt(self.bottom + 40.0),
            escape(&doc.x_axis.label)
        );
        let _ = writeln!(
            out,
            "<text x=\"16.000\" y=\"{mid_y}\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16.000 {mid_y})\">{}</text>",
            escape(&doc.y_axis.label)
        );
    }
}

/// Round-number ticks, about five across the axis.
fn linear_ticks(axis: &Axis) -> Vec<(f64, String)> {
    let span = axis.max - axis.min;
    if !(span > 0.0) || !span.is_finite() {
        return Vec::new();
    }
    let raw = span / 5.0;
    let magnitude = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * magnitude)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * magnitude);
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let first = (axis.min / step).ceil() as i64;
    let last = (axis.max / step).floor() as i64;
    (first..=last)
        .map(|i| {
            let v = i as f64 * step;
            (v, format!("{v:.decimals$}"))
        })
        .collect()
}

/// One tick per power of ten inside the axis range.
fn decade_ticks(axis: &Axis) -> Vec<(f64, String)> {
    if !(axis.min > 0.0) || !(axis.max > axis.min) {
        return Vec::new();
    }
    let first = axis.min.log10().ceil() as i32;
    let last = axis.max.log10().floor() as i32;
    (first..=last).map(|e| (10f64.powi(e), format!("1e{e}"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::plot::{Layer, PlotDocument};

    fn doc(layers: Vec<Layer>, scale: Scale) -> PlotDocument {
        PlotDocument {
            title: "A & B".into(),
            x_axis: Axis {
                label: "year".into(),
                min: 0.0,
                max: 100.0,
                scale: Scale::Linear,
            },
            y_axis: Axis {
                label: "v".into(),
                min: 0.5,
                max: 2000.0,
                scale,
            },
            layers,
            width: 400,
            height: 300,
        }
    }

    #[test]
    fn empty_document_has_axes_only() {
        let svg = render_svg(&doc(vec![], Scale::Linear));
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\""));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("class=\"axes\""));
        assert!(!svg.contains("polyline"));
        assert!(!svg.contains("<circle"));
        assert!(svg.contains("A &amp; B"));
    }

    #[test]
    fn rendering_is_deterministic() {
        let layers = vec![Layer {
            kind: LayerKind::Curve,
            name: "c".into(),
            style: "fit-0".into(),
            points: (0..50).map(|i| (i as f64 * 2.0, 1.0 + (i as f64).sqrt())).collect(),
        }];
        let d = doc(layers, Scale::Log10);
        assert_eq!(render_svg(&d), render_svg(&d));
    }

    #[test]
    fn two_point_line_is_one_polyline() {
        let layers = vec![Layer {
            kind: LayerKind::Line,
            name: "l".into(),
            style: "fit-0".into(),
            points: vec![(0.0, 1.0), (100.0, 2.0)],
        }];
        let svg = render_svg(&doc(layers, Scale::Linear));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains("points=\"80.000,"));
    }

    #[test]
    fn log_axis_has_decade_ticks() {
        let svg = render_svg(&doc(vec![], Scale::Log10));
        for label in ["1e0", "1e1", "1e2", "1e3"] {
            assert!(svg.contains(&format!(">{label}</text>")), "{label}");
        }
        assert!(!svg.contains(">1e4<"));
    }

    #[test]
    fn linear_ticks_are_round() {
        let ticks = linear_ticks(&Axis {
            label: String::new(),
            min: -45.0,
            max: 945.0,
            scale: Scale::Linear,
        });
        let values: Vec<f64> = ticks.iter().map(|t| t.0).collect();
        assert_eq!(values, vec![0.0, 200.0, 400.0, 600.0, 800.0]);
        assert_eq!(ticks[0].1, "0");
    }
}
