use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use serde_json::{json, Map, Value};

use hypergrowth::ingest::{parse_canonical_csv, parse_maddison_horizontal, DEFAULT_LABEL};
use hypergrowth::regimes::{monotonicity_report, Direction};
use hypergrowth::report::json::{emit_json_report, num, read_fit_report, BreakEntry, FitEntry};
use hypergrowth::report::plot::{plot_series, sparse_display, Overlay, PlotOptions, Scale};
use hypergrowth::report::svg::render_svg;
use hypergrowth::report::tables::{ratio_to_csv, render_plot_csv, to_canonical_csv};
use hypergrowth::synth::Fixture;
use hypergrowth::{
    chow_test, fit_general_hyperbola, fit_hyperbola, flag_deviations, ratio_trajectory, reciprocal, regime_verdict,
    scan_breakpoints, GeneralFit, HyperbolicModel, LinearFit, TimeSeries,
};

use crate::{
    resolve_format, CliError, FitArgs, Format, IngestArgs, Kind, Output, PlotArgs, RatioArgs, ScanArgs, Style,
    SynthArgs, TestBreakArgs,
};

type Series = TimeSeries<f64>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: hypergrowth::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn write_out(out: &Output, text: &str) -> Result<(), CliError> {
    match &out.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Data(format!("cannot write to standard output: {e}"))),
    }
}

/// Canonical CSV; unlabelled series take the file stem as their label.
fn load_series(path: &Path) -> Result<Series, CliError> {
    let s: Series = in_file(path, parse_canonical_csv(&read(path)?))?;
    if s.label() == DEFAULT_LABEL {
        if let Some(stem) = path.file_stem() {
            return Ok(s.with_label(stem.to_string_lossy()));
        }
    }
    Ok(s)
}

fn load_all(paths: &[PathBuf]) -> Result<Vec<Series>, CliError> {
    paths.iter().map(|p| load_series(p)).collect()
}

fn paths_json(paths: &[PathBuf]) -> Value {
    json!(paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>())
}

fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().copied().map(num).collect())
}

pub fn ingest(args: &IngestArgs) -> Result<(), CliError> {
    resolve_format(&args.out, &[Format::Csv])?;
    let text = read(&args.input)?;
    let (series, _) = in_file(
        &args.input,
        parse_maddison_horizontal::<f64>(&text, &args.row_label, &args.unit, args.scale),
    )?;
    write_out(&args.out, &to_canonical_csv(&series))
}

struct Fitted {
    series: Series,
    model: HyperbolicModel<f64>,
    fit: LinearFit<f64>,
    general: Option<GeneralFit<f64>>,
}

fn fit_one(series: Series, q_grid: Option<&[f64]>, exclude_after: Option<f64>) -> hypergrowth::Result<Fitted> {
    match q_grid {
        Some(grid) => {
            let g = fit_general_hyperbola(&series, grid, exclude_after)?;
            Ok(Fitted {
                model: g.model,
                fit: g.fit.clone(),
                general: Some(g),
                series,
            })
        }
        None => {
            let (model, fit) = fit_hyperbola(&series, exclude_after)?;
            Ok(Fitted {
                series,
                model,
                fit,
                general: None,
            })
        }
    }
}

/// The series in the space where the chosen exponent is a straight line.
fn linearised(series: &Series, q: f64) -> hypergrowth::Result<Series> {
    if q == 1.0 {
        return reciprocal(series);
    }
    let points = series.points().iter().map(|&(t, v)| (t, v.powf(-1.0 / q))).collect();
    TimeSeries::new(series.label(), format!("({})^(-1/{q})", series.unit()), points)
}

pub fn fit(args: &FitArgs) -> Result<(), CliError> {
    resolve_format(&args.out, &[Format::Json])?;
    let mut fitted = Vec::new();
    for path in &args.input {
        let s = load_series(path)?;
        fitted.push(in_file(path, fit_one(s, args.q_grid.as_deref(), args.exclude_after))?);
    }
    let mut diagnostics = Vec::new();
    for (f, path) in fitted.iter().zip(&args.input) {
        let line = in_file(path, linearised(&f.series, f.model.q()))?;
        let deviations = if f.fit.n > 2 {
            Some(in_file(path, flag_deviations(&line, &f.fit, args.z_threshold))?)
        } else {
            None
        };
        let mono = in_file(
            path,
            monotonicity_report(&line, Direction::Decreasing, args.mono_tolerance),
        )?;
        diagnostics.push((deviations, mono));
    }
    let entries: Vec<FitEntry<'_, f64>> = fitted
        .iter()
        .zip(&diagnostics)
        .map(|(f, (d, m))| FitEntry {
            series: &f.series,
            model: &f.model,
            fit: &f.fit,
            candidates: f.general.as_ref().map(|g| g.candidates.as_slice()),
            deviations: d.as_ref(),
            monotonicity: Some(m),
        })
        .collect();

    let mut params = Map::new();
    params.insert("command".into(), json!("fit"));
    params.insert("inputs".into(), paths_json(&args.input));
    params.insert("exclude_after".into(), opt_num(args.exclude_after));
    params.insert("q_grid".into(), args.q_grid.as_deref().map_or(Value::Null, nums));
    params.insert("z_threshold".into(), num(args.z_threshold));
    params.insert("mono_tolerance".into(), num(args.mono_tolerance));
    params.insert("direction".into(), json!("decreasing"));
    write_out(&args.out, &emit_json_report(params, &entries, &[]))
}

pub fn test_break(args: &TestBreakArgs) -> Result<(), CliError> {
    resolve_format(&args.out, &[Format::Json])?;
    let series = load_all(&args.input)?;
    let mut reports = Vec::new();
    for (s, path) in series.iter().zip(&args.input) {
        let recip = in_file(path, reciprocal(s))?;
        for &year in &args.year {
            let report = in_file(path, chow_test(&recip, year))?;
            let verdict = in_file(path, regime_verdict(&report))?;
            reports.push((s.label().to_string(), report, verdict));
        }
    }
    let breaks: Vec<BreakEntry<'_, f64>> = reports
        .iter()
        .map(|(label, report, verdict)| BreakEntry { label, report, verdict })
        .collect();
    let mut params = Map::new();
    params.insert("command".into(), json!("test-break"));
    params.insert("inputs".into(), paths_json(&args.input));
    params.insert("years".into(), nums(&args.year));
    params.insert("transform".into(), json!("reciprocal"));
    write_out(&args.out, &emit_json_report(params, &[], &breaks))
}

pub fn scan_breaks(args: &ScanArgs) -> Result<(), CliError> {
    resolve_format(&args.out, &[Format::Json])?;
    let series = load_all(&args.input)?;
    let mut reports = Vec::new();
    for (s, path) in series.iter().zip(&args.input) {
        let kept = match args.exclude_after {
            Some(y) => in_file(path, s.truncate_after(y))?,
            None => s.clone(),
        };
        let recip = in_file(path, reciprocal(&kept))?;
        let report = in_file(
            path,
            scan_breakpoints(&recip, args.max_segments, args.min_segment_points),
        )?;
        let verdict = in_file(path, regime_verdict(&report))?;
        reports.push((s.label().to_string(), report, verdict));
    }
    let breaks: Vec<BreakEntry<'_, f64>> = reports
        .iter()
        .map(|(label, report, verdict)| BreakEntry { label, report, verdict })
        .collect();
    let mut params = Map::new();
    params.insert("command".into(), json!("scan-breaks"));
    params.insert("inputs".into(), paths_json(&args.input));
    params.insert("max_segments".into(), json!(args.max_segments));
    params.insert("min_segment_points".into(), json!(args.min_segment_points));
    params.insert("exclude_after".into(), opt_num(args.exclude_after));
    params.insert("transform".into(), json!("reciprocal"));
    write_out(&args.out, &emit_json_report(params, &[], &breaks))
}

struct RatioSide {
    unit: String,
    model: HyperbolicModel<f64>,
    years: Vec<f64>,
}

fn ratio_side(path: &Path, exclude_after: Option<f64>) -> Result<RatioSide, CliError> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        let stored = in_file(path, read_fit_report(&text))?;
        let first = stored
            .into_iter()
            .next()
            .ok_or_else(|| CliError::Data(format!("{}: fit report contains no fits", path.display())))?;
        return Ok(RatioSide {
            unit: first.unit,
            model: first.model,
            years: first.years,
        });
    }
    let s = load_series(path)?;
    let (model, _) = in_file(path, fit_hyperbola(&s, exclude_after))?;
    Ok(RatioSide {
        unit: s.unit().to_string(),
        years: s.years().collect(),
        model,
    })
}

pub fn ratio(args: &RatioArgs) -> Result<(), CliError> {
    resolve_format(&args.out, &[Format::Csv])?;
    if args.input.len() != 2 {
        return Err(CliError::Usage(
            ErrorKind::WrongNumberOfValues,
            format!(
                "ratio needs exactly two --input values (GDP, then population), got {}",
                args.input.len()
            ),
        ));
    }
    let gdp = ratio_side(&args.input[0], args.exclude_after)?;
    let pop = ratio_side(&args.input[1], args.exclude_after)?;
    let grid = match &args.grid {
        Some(g) => g.clone(),
        None => {
            let below = |t: f64| [&gdp, &pop].iter().all(|s| s.model.t_s().is_none_or(|ts| t < ts));
            let mut years: Vec<f64> = gdp
                .years
                .iter()
                .chain(&pop.years)
                .copied()
                .filter(|&t| below(t))
                .collect();
            years.sort_by(f64::total_cmp);
            years.dedup();
            if years.is_empty() {
                return Err(CliError::Data(
                    "no input year lies below both singularities; pass --grid".into(),
                ));
            }
            years
        }
    };
    let r = ratio_trajectory(&gdp.model, &pop.model, &grid)?;
    let unit = format!("({})/({})", gdp.unit, pop.unit);
    write_out(&args.out, &ratio_to_csv(&r, "gdp_per_capita", &unit))
}

pub fn plot(args: &PlotArgs) -> Result<(), CliError> {
    let format = resolve_format(&args.out, &[Format::Svg, Format::Csv])?;
    if args.style == Style::Sparse && args.keep_years.is_none() {
        return Err(CliError::Usage(
            ErrorKind::MissingRequiredArgument,
            "--style sparse requires --keep-years".into(),
        ));
    }
    let series = load_all(&args.input)?;
    let mut options = PlotOptions::default();
    let mut overlays = Vec::new();
    let (shown, default_title) = match args.style {
        Style::Linear => {
            options.connect = true;
            (series, "Linear display")
        }
        Style::Semilog => {
            options.connect = true;
            options.scale = Scale::Log10;
            (series, "Semilogarithmic display")
        }
        Style::Reciprocal => {
            options.reciprocal = true;
            for (s, path) in series.iter().zip(&args.input) {
                let (_, fit) = in_file(path, fit_hyperbola(s, args.exclude_after))?;
                overlays.push(Overlay::from_fit(format!("{} fit", s.label()), &fit));
            }
            (series, "Reciprocal values")
        }
        Style::Overlay => {
            for (s, path) in series.iter().zip(&args.input) {
                let f = in_file(path, fit_one(s.clone(), args.q_grid.as_deref(), args.exclude_after))?;
                overlays.push(Overlay::from_model(format!("{} fit", s.label()), f.model));
            }
            (series, "Data and fitted hyperbolas")
        }
        Style::Sparse => {
            options.connect = true;
            let keep = args.keep_years.as_deref().unwrap_or_default();
            let mut sparse = Vec::new();
            for (s, path) in series.iter().zip(&args.input) {
                sparse.push(in_file(path, sparse_display(s, keep))?);
            }
            (sparse, "Sparse display")
        }
    };
    options.title = args.title.clone().unwrap_or_else(|| default_title.to_string());
    let doc = plot_series(&shown, &overlays, &options)?;
    let text = match format {
        Format::Csv => render_plot_csv(&doc),
        _ => render_svg(&doc),
    };
    write_out(&args.out, &text)
}

pub fn synth(args: &SynthArgs) -> Result<(), CliError> {
    resolve_format(&args.out, &[Format::Csv])?;
    let kind = match args.kind {
        Kind::Hyperbolic => Fixture::Hyperbolic,
        Kind::Piecewise => Fixture::Piecewise,
        Kind::Slowdown => Fixture::Slowdown,
    };
    let series = kind.generate(args.seed, args.noise.unwrap_or(kind.default_noise()))?;
    write_out(&args.out, &to_canonical_csv(&series))
}
