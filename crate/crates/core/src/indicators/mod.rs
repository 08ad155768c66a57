//! Annual wage series: ingestion, validation and the measures derived from it.

mod figures;
mod measures;
mod observation;
mod stats;

pub use figures::{figure_series, Figure};
pub use measures::{
    annualize, kaitz_divergence, nonsupervisory_band, ratios, real_series, KaitzRow, RealWages, WageRatios,
};
pub use observation::{load_series, read_series, AnnualObservation, Violation, COLUMNS};
pub use stats::{gini_alignment, pearson, scatter, ScatterStats};

use thiserror::Error;

use crate::model::ModelError;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("{} validation error(s)", .0.len())]
    Invalid(Vec<Violation>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IndicatorError {
    #[error("series is empty")]
    EmptySeries,
    #[error("duplicate years in series: {0:?}")]
    DuplicateYears(Vec<i32>),
    #[error("deflator missing for year {0}")]
    MissingDeflator(i32),
    #[error("base year {0} is not in the series")]
    MissingBaseYear(i32),
    #[error("column `{0}` has no values")]
    MissingColumn(&'static str),
    #[error("need at least {needed} usable rows, found {found}")]
    InsufficientData { needed: usize, found: usize },
    #[error("{0} has zero variance")]
    ZeroVariance(&'static str),
    #[error(transparent)]
    Model(#[from] ModelError),
}
