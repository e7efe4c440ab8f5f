//! Plots, tables and JSON reports.

pub mod json;
pub mod plot;
pub mod svg;
pub mod tables;

pub use json::{emit_json_report, read_fit_report, BreakEntry, FitEntry, StoredFit, REPORT_SCHEMA};
pub use plot::{plot_series, sparse_display, Overlay, PlotDocument, PlotOptions, Scale};
pub use svg::render_svg;
pub use tables::{ratio_to_csv, render_plot_csv, to_canonical_csv};
