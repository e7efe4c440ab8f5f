use thiserror::Error;

/// Everything the library can reject.
///
/// Numeric payloads are carried as `f64` regardless of the scalar type used
/// for the computation so that the error type stays non-generic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("value {value} at year {year} is not positive")]
    NonPositiveValue { year: f64, value: f64 },

    #[error("non-finite {what} at year {year}")]
    NonFinite { year: f64, what: &'static str },

    #[error("duplicate year {year}")]
    DuplicateYear { year: f64 },

    #[error("years must be strictly increasing: {prev} is followed by {next}")]
    UnorderedYears { prev: f64, next: f64 },

    #[error("insufficient data: need at least {needed} points, have {have}")]
    InsufficientData { needed: usize, have: usize },

    #[error("degenerate design: all years are identical")]
    DegenerateDesign,

    #[error("intercept {a} is not positive; the hyperbola is not positive on the data range")]
    NonPositiveIntercept { a: f64 },

    #[error("year {t} is outside the hyperbola's domain{}", singularity_suffix(*.t_s))]
    SingularityDomain { t: f64, t_s: Option<f64> },

    #[error("{model} model is undefined at grid year {year}{}", singularity_suffix(*.t_s))]
    RatioDomain {
        model: &'static str,
        year: f64,
        t_s: Option<f64>,
    },

    #[error("exponent {q} must be positive and finite")]
    InvalidExponent { q: f64 },

    #[error("exponent grid is empty")]
    EmptyExponentGrid,

    #[error("no exponent in the grid yields a positive hyperbola over the data")]
    NoFeasibleExponent,

    #[error("{side} side of break year {break_year} has {have} points, need at least {needed}")]
    ChowSideTooShort {
        side: &'static str,
        break_year: f64,
        have: usize,
        needed: usize,
    },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("series has {have} points, fewer than the minimum segment size {min}")]
    SeriesTooShort { have: usize, min: usize },

    #[error("break report has no segmentations")]
    EmptySegmentations,

    #[error("residual scale undefined: {included} included points, need more than 2")]
    UndefinedResidualScale { included: usize },

    #[error("fit does not match series: {0}")]
    FitMismatch(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("row label {label:?} not found; available labels: {}", .available.join(", "))]
    UnknownRowLabel { label: String, available: Vec<String> },

    #[error("header column {column} ({text:?}) is not a year")]
    BadYearColumn { column: usize, text: String },

    #[error("row {label:?} has no usable cells")]
    NoUsableCells { label: String },

    #[error("duplicate series label {0:?}")]
    DuplicateLabel(String),

    #[error("keep year {year} is not present in the series")]
    MissingKeepYear { year: f64 },

    #[error("log10 axis requires positive values; layer {layer:?} has {value} at x = {x}")]
    LogScaleNonPositive { layer: String, x: f64, value: f64 },

    #[error("malformed report: {0}")]
    Report(String),
}

fn singularity_suffix(t_s: Option<f64>) -> String {
    match t_s {
        Some(t_s) => format!(" (singularity at {t_s})"),
        None => " (reciprocal line is not positive there)".to_string(),
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
