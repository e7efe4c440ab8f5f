//! Machine-readable fit and verdict reports.
//!
//! Reports are built as `serde_json::Value` trees, whose object keys are
//! kept sorted, so serialising, parsing and serialising again is
//! byte-identical. Non-finite numbers are written as the strings `"inf"`,
//! `"-inf"` and `"nan"`.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::fit::LinearFit;
use crate::hyperbola::{ExponentCandidate, HyperbolicModel};
use crate::regimes::{BreakReport, DeviationReport, Direction, Monotonicity, MonotonicityReport, RegimeVerdict};
use crate::scalar::Real;
use crate::series::TimeSeries;

pub const REPORT_SCHEMA: &str = "hypergrowth-report/1";

/// One fitted series.
pub struct FitEntry<'a, T> {
    pub series: &'a TimeSeries<T>,
    pub model: &'a HyperbolicModel<T>,
    pub fit: &'a LinearFit<T>,
    pub candidates: Option<&'a [ExponentCandidate<T>]>,
    pub deviations: Option<&'a DeviationReport<T>>,
    pub monotonicity: Option<&'a MonotonicityReport<T>>,
}

/// One break analysis with its verdict.
pub struct BreakEntry<'a, T> {
    pub label: &'a str,
    pub report: &'a BreakReport<T>,
    pub verdict: &'a RegimeVerdict<T>,
}

/// Serialises fits and break analyses into a report document.
///
/// `parameters` echoes the settings that produced the report.
pub fn emit_json_report<T: Real>(
    parameters: Map<String, Value>,
    fits: &[FitEntry<'_, T>],
    breaks: &[BreakEntry<'_, T>],
) -> String {
    let overall = if breaks.is_empty() {
        Value::Null
    } else if breaks.iter().all(|b| b.verdict.verdict.is_one_stage()) {
        json!("one_stage")
    } else {
        json!("multi_stage")
    };
    let doc = json!({
        "schema": REPORT_SCHEMA,
        "parameters": Value::Object(parameters),
        "fits": fits.iter().map(fit_value).collect::<Vec<_>>(),
        "breaks": breaks.iter().map(break_value).collect::<Vec<_>>(),
        "verdict": overall,
    });
    canonical_json(&doc)
}

/// Pretty-printed JSON with a trailing newline.
pub fn canonical_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("Value serialisation cannot fail");
    s.push('\n');
    s
}

pub fn num<T: Real>(x: T) -> Value {
    let x = x.as_f64();
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn nums<T: Real>(xs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(xs.into_iter().map(num).collect())
}

fn line_value<T: Real>(fit: &LinearFit<T>) -> Value {
    json!({
        "a": num(fit.a),
        "k": num(fit.k),
        "rss": num(fit.rss),
        "n": fit.n,
    })
}

fn fit_value<T: Real>(entry: &FitEntry<'_, T>) -> Value {
    let FitEntry {
        series,
        model,
        fit,
        candidates,
        deviations,
        monotonicity,
    } = entry;
    json!({
        "label": series.label(),
        "unit": series.unit(),
        "years": nums(series.years()),
        "a": num(model.a()),
        "k": num(model.k()),
        "q": num(model.q()),
        "t_s": model.t_s().map_or(Value::Null, num),
        "r2": num(fit.r2),
        "rss": num(fit.rss),
        "n": fit.n,
        "degenerate": fit.degenerate,
        "excluded": nums(fit.excluded.iter().copied()),
        "residuals": fit.residuals.iter().map(|r| json!({
            "t": num(r.t),
            "residual": num(r.residual),
            "included": r.included,
        })).collect::<Vec<_>>(),
        "q_candidates": candidates.map_or(Value::Null, |cs| Value::Array(cs.iter().map(|c| json!({
            "q": num(c.q),
            "a": num(c.fit.a),
            "k": num(c.fit.k),
            "linear_rss": num(c.fit.rss),
            "value_rss": c.value_rss.map_or(Value::Null, num),
        })).collect())),
        "deviations": deviations.map_or(Value::Null, |d| json!({
            "threshold": num(d.threshold),
            "scale": num(d.scale),
            "flags": d.flags.iter().map(|f| json!({
                "t": num(f.t),
                "residual": num(f.residual),
                "z": num(f.z),
                "flagged": f.flagged,
                "side": f.side.as_str(),
                "included": f.included,
            })).collect::<Vec<_>>(),
        })),
        "monotonicity": monotonicity.map_or(Value::Null, |m| json!({
            "direction": match m.direction {
                Direction::Decreasing => "decreasing",
                Direction::Increasing => "increasing",
            },
            "tolerance": num(m.tolerance),
            "verdict": match m.verdict {
                Monotonicity::Monotone => "monotone",
                Monotonicity::Violated => "violated",
            },
            "violations": m.violations.iter().map(|v| json!({
                "t_prev": num(v.t_prev),
                "t_next": num(v.t_next),
                "v_prev": num(v.v_prev),
                "v_next": num(v.v_next),
            })).collect::<Vec<_>>(),
        })),
    })
}

fn break_value<T: Real>(entry: &BreakEntry<'_, T>) -> Value {
    let r = entry.report;
    let breakpoints = match &r.verdict {
        crate::regimes::Verdict::OneStage => Vec::new(),
        crate::regimes::Verdict::MultiStage(b) => b.clone(),
    };
    json!({
        "label": entry.label,
        "n": r.n,
        "candidate_breaks": nums(r.candidate_breaks.iter().copied()),
        "chow": r.chow.as_ref().map_or(Value::Null, |c| json!({
            "break_year": num(c.break_year),
            "f": num(c.f),
            "p_value": num(c.p_value),
            "dof": [c.dof.0, c.dof.1],
            "rss_pooled": num(c.rss_pooled),
            "rss_left": num(c.rss_left),
            "rss_right": num(c.rss_right),
        })),
        "segmentations": r.segmentations.iter().map(|s| json!({
            "boundaries": nums(s.boundaries.iter().copied()),
            "rss": num(s.rss),
            "params": s.params,
            "bic": num(s.bic),
            "segments": s.segments.iter().zip(&s.ranges).map(|(fit, range)| {
                let mut v = line_value(fit);
                v["start"] = num(fit.residuals[0].t);
                v["end"] = num(fit.residuals[fit.residuals.len() - 1].t);
                v["first_index"] = json!(range.start);
                v
            }).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "best": r.best,
        "verdict": r.verdict.key(),
        "breakpoints": nums(breakpoints),
        "summary": entry.verdict.summary,
        "delta_bic": entry.verdict.delta_bic.map_or(Value::Null, num),
        "runner_up": entry.verdict.runner_up,
    })
}

/// Model stored in a fit report, with the years of the series it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct StoredFit {
    pub label: String,
    pub unit: String,
    pub model: HyperbolicModel<f64>,
    pub years: Vec<f64>,
}

/// Reads the fitted models back out of a report produced by [`emit_json_report`].
pub fn read_fit_report(text: &str) -> Result<Vec<StoredFit>> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Report(e.to_string()))?;
    match doc.get("schema").and_then(Value::as_str) {
        Some(REPORT_SCHEMA) => {}
        other => {
            return Err(Error::Report(format!(
                "expected schema {REPORT_SCHEMA:?}, found {other:?}"
            )))
        }
    }
    let fits = doc
        .get("fits")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Report("missing \"fits\" array".into()))?;
    fits.iter()
        .enumerate()
        .map(|(i, f)| {
            let field = |name: &str| {
                f.get(name)
                    .and_then(Value::as_f64)
                    .ok_or_else(|| Error::Report(format!("fits[{i}].{name} missing or not a number")))
            };
            let text = |name: &str| f.get(name).and_then(Value::as_str).unwrap_or_default().to_string();
            let years = f
                .get("years")
                .and_then(Value::as_array)
                .map(|ys| ys.iter().filter_map(Value::as_f64).collect())
                .unwrap_or_default();
            Ok(StoredFit {
                label: text("label"),
                unit: text("unit"),
                model: HyperbolicModel::new(field("a")?, field("k")?, field("q")?)?,
                years,
            })
        })
        .collect()
}
