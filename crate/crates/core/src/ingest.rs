//! Parsers for canonical `year,value` CSV and Maddison-style horizontal tables.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::series::{TimeSeries, UNSPECIFIED_UNIT};

/// Label given to canonical CSV series that carry no `# label:` comment.
pub const DEFAULT_LABEL: &str = "series";

/// Named series with unique labels plus a provenance note.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalTable<T> {
    series: Vec<TimeSeries<T>>,
    source: String,
}

impl<T: Real> CanonicalTable<T> {
    pub fn new(source: impl Into<String>) -> Self {
        Self {
            series: Vec::new(),
            source: source.into(),
        }
    }

    pub fn push(&mut self, series: TimeSeries<T>) -> Result<()> {
        if self.get(series.label()).is_some() {
            return Err(Error::DuplicateLabel(series.label().to_string()));
        }
        self.series.push(series);
        Ok(())
    }

    pub fn get(&self, label: &str) -> Option<&TimeSeries<T>> {
        self.series.iter().find(|s| s.label() == label)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.series.iter().map(|s| s.label())
    }

    pub fn series(&self) -> &[TimeSeries<T>] {
        &self.series
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

/// Cells seen while extracting one row.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseSummary {
    pub used_cells: usize,
    pub skipped_cells: usize,
}

/// Parses `year,value` CSV.
///
/// Leading `#` lines are comments; `# unit: …` and `# label: …` set the
/// series metadata. Rows are sorted by year on ingest.
pub fn parse_canonical_csv<T: Real>(text: &str) -> Result<TimeSeries<T>> {
    let mut unit = None;
    let mut label = None;
    let mut header_seen = false;
    let mut points = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once(':') {
                match key.trim().to_ascii_lowercase().as_str() {
                    "unit" => unit = Some(value.trim().to_string()),
                    "label" => label = Some(value.trim().to_string()),
                    _ => {}
                }
            }
            continue;
        }
        if !header_seen {
            let cells: Vec<_> = line.split(',').map(|c| c.trim().to_ascii_lowercase()).collect();
            if cells != ["year", "value"] {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected header `year,value`, found {line:?}"),
                });
            }
            header_seen = true;
            continue;
        }
        let cells: Vec<_> = line.split(',').collect();
        if cells.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 2 cells, found {}", cells.len()),
            });
        }
        let t: T = parse_number(cells[0], line_no)?;
        let v: T = parse_number(cells[1], line_no)?;
        points.push((t, v));
    }
    if !header_seen {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: "missing header `year,value`".into(),
        });
    }
    TimeSeries::from_unsorted(
        label.unwrap_or_else(|| DEFAULT_LABEL.to_string()),
        unit.unwrap_or_else(|| UNSPECIFIED_UNIT.to_string()),
        points,
    )
}

fn parse_number<T: Real>(cell: &str, line: usize) -> Result<T> {
    let cell = cell.trim();
    cell.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .and_then(T::from_f64)
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::Parse {
            line,
            message: format!("cannot parse {cell:?} as a number"),
        })
}

/// Strips thousands separators (commas and spaces) before parsing.
fn parse_grouped(cell: &str) -> Option<f64> {
    let cleaned: String = cell
        .trim()
        .chars()
        .filter(|c| !matches!(c, ',' | ' ' | '\u{a0}' | '\u{202f}'))
        .collect();
    cleaned.parse::<f64>().ok().filter(|x| x.is_finite())
}

fn detect_delimiter(text: &str) -> u8 {
    match text.lines().next() {
        Some(first) if first.contains('\t') => b'\t',
        _ => b',',
    }
}

struct HorizontalTable {
    /// `(column index, year)` for every non-empty header cell.
    years: Vec<(usize, f64)>,
    rows: Vec<(usize, csv::StringRecord)>,
}

fn read_horizontal(text: &str) -> Result<HorizontalTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .delimiter(detect_delimiter(text))
        .from_reader(text.as_bytes());

    let mut years: Option<Vec<(usize, f64)>> = None;
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        match years {
            None => {
                let is_header = record.iter().skip(1).any(|c| parse_grouped(c).is_some());
                if !is_header {
                    continue;
                }
                let mut cols = Vec::new();
                for (j, cell) in record.iter().enumerate().skip(1) {
                    if cell.trim().is_empty() {
                        continue;
                    }
                    let year = parse_grouped(cell).ok_or_else(|| Error::BadYearColumn {
                        column: j + 1,
                        text: cell.to_string(),
                    })?;
                    cols.push((j, year));
                }
                years = Some(cols);
            }
            Some(_) => rows.push((line, record)),
        }
    }
    let years = years.ok_or(Error::Parse {
        line: 1,
        message: "no header row with year columns found".into(),
    })?;
    Ok(HorizontalTable { years, rows })
}

fn extract_row<T: Real>(
    table: &HorizontalTable,
    line: usize,
    record: &csv::StringRecord,
    label: &str,
    unit: &str,
    scale_factor: T,
) -> Result<(TimeSeries<T>, ParseSummary)> {
    let mut summary = ParseSummary::default();
    let mut points = Vec::new();
    for &(col, year) in &table.years {
        let cell = record.get(col).unwrap_or("");
        if cell.trim().is_empty() {
            summary.skipped_cells += 1;
            continue;
        }
        let value = parse_grouped(cell).ok_or_else(|| Error::Parse {
            line,
            message: format!("row {label:?}, year {year}: cannot parse {cell:?} as a number"),
        })?;
        let (Some(t), Some(v)) = (T::from_f64(year), T::from_f64(value)) else {
            return Err(Error::Parse {
                line,
                message: format!("row {label:?}, year {year}: value out of range"),
            });
        };
        points.push((t, v * scale_factor));
        summary.used_cells += 1;
    }
    if points.is_empty() {
        return Err(Error::NoUsableCells {
            label: label.to_string(),
        });
    }
    Ok((TimeSeries::from_unsorted(label, unit, points)?, summary))
}

/// Extracts the row labelled `row_label` from a horizontal table whose header
/// row carries years as column labels.
///
/// The header is the first row with a numeric cell after the label column.
/// Comma or tab delimiters are detected from the first line. Empty cells are
/// skipped and counted; values are multiplied by `scale_factor`.
pub fn parse_maddison_horizontal<T: Real>(
    text: &str,
    row_label: &str,
    unit: &str,
    scale_factor: T,
) -> Result<(TimeSeries<T>, ParseSummary)> {
    let table = read_horizontal(text)?;
    let wanted = row_label.trim();
    let Some((line, record)) = table.rows.iter().find(|(_, r)| r.get(0).map(str::trim) == Some(wanted)) else {
        let available = table
            .rows
            .iter()
            .filter_map(|(_, r)| r.get(0).map(str::trim))
            .filter(|l| !l.is_empty())
            .map(String::from)
            .collect();
        return Err(Error::UnknownRowLabel {
            label: wanted.to_string(),
            available,
        });
    };
    extract_row(&table, *line, record, wanted, unit, scale_factor)
}

/// Reads every labelled row with at least one value into a table.
pub fn parse_maddison_table<T: Real>(
    text: &str,
    unit: &str,
    scale_factor: T,
    source: &str,
) -> Result<CanonicalTable<T>> {
    let table = read_horizontal(text)?;
    let mut out = CanonicalTable::new(source);
    for (line, record) in &table.rows {
        let label = record.get(0).map(str::trim).unwrap_or("");
        if label.is_empty() {
            continue;
        }
        match extract_row(&table, *line, record, label, unit, scale_factor) {
            Ok((series, _)) => out.push(series)?,
            Err(Error::NoUsableCells { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
