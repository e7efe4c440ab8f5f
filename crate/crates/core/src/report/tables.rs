use std::fmt::Write;

use crate::ratio::RatioTrajectory;
use crate::scalar::Real;
use crate::series::TimeSeries;

use super::plot::PlotDocument;

/// Canonical `year,value` CSV with `# label:` and `# unit:` comments.
///
/// Numbers use the shortest representation that parses back to the same value.
pub fn to_canonical_csv<T: Real>(series: &TimeSeries<T>) -> String {
    canonical(series.label(), series.unit(), series.points().iter().copied())
}

/// Ratio trajectory as canonical CSV, so it can be read back like any series.
pub fn ratio_to_csv<T: Real>(ratio: &RatioTrajectory<T>, label: &str, unit: &str) -> String {
    canonical(label, unit, ratio.points())
}

fn canonical<T: Real>(label: &str, unit: &str, points: impl Iterator<Item = (T, T)>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# label: {}", single_line(label));
    let _ = writeln!(out, "# unit: {}", single_line(unit));
    out.push_str("year,value\n");
    for (t, v) in points {
        let _ = writeln!(out, "{},{}", t.as_f64(), v.as_f64());
    }
    out
}

fn single_line(s: &str) -> String {
    s.replace(['\n', '\r'], " ")
}

/// Plot points as `layer,x,y` rows for external plotting tools.
pub fn render_plot_csv(doc: &PlotDocument) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["layer", "x", "y"])
        .and_then(|_| {
            doc.layers.iter().enumerate().try_for_each(|(i, layer)| {
                let name = format!("{i}:{}:{}", layer.kind.as_str(), layer.name);
                layer
                    .points
                    .iter()
                    .try_for_each(|(x, y)| writer.write_record([name.as_str(), &x.to_string(), &y.to_string()]))
            })
        })
        .expect("writing to memory cannot fail");
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}
