//! Ratio measures, labor-share accounting, transform units and wage compression.

mod compression;
mod distribution;
mod horizon;
mod labor;
mod ratio;

pub use compression::{compress, kernel_weight, marginal_response, sag, CompressionParams, Kernel};
pub use distribution::{gini, mean_wage, median_wage, WageBin, WageDistribution};
pub use horizon::{crossing_wage, horizon_side, transform_cost, HorizonSide, TransformUnit};
pub use labor::{
    decompose_gdppc, deflator_invariance, labor_share, ratio_nominal, t_mean_from_wage,
    verify_identity, CompensationBreakdown, LaborShareAccount,
};
pub use ratio::{Ratio, HOURS_PER_YEAR};

use thiserror::Error;

/// Domain errors raised by the model layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("{what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },
    #[error("{what} must be strictly positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },
    #[error("{what} must be non-negative, got {value}")]
    Negative { what: &'static str, value: f64 },
    #[error("{what} must lie in [{lo}, {hi}], got {value}")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("compensation shares must sum to 1, got {0}")]
    SharesDoNotSumToOne(f64),
    #[error("wage share is zero; total compensation is undefined")]
    ZeroWageShare,
    #[error("wage distribution has no bins with positive mass")]
    EmptyDistribution,
    #[error("bin wages must be strictly increasing (bin {index})")]
    UnorderedBins { index: usize },
    #[error("new minimum {new_min} is below the current minimum {current_min}")]
    FloorBelowMinimum { new_min: f64, current_min: f64 },
    #[error("compression ceiling {ceiling} must exceed the minimum {floor}")]
    CeilingNotAboveFloor { ceiling: f64, floor: f64 },
}

pub(crate) fn finite(what: &'static str, value: f64) -> Result<f64, ModelError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(ModelError::NonFinite { what, value })
    }
}

pub(crate) fn positive(what: &'static str, value: f64) -> Result<f64, ModelError> {
    finite(what, value)?;
    if value > 0.0 {
        Ok(value)
    } else {
        Err(ModelError::NonPositive { what, value })
    }
}

pub(crate) fn non_negative(what: &'static str, value: f64) -> Result<f64, ModelError> {
    finite(what, value)?;
    if value >= 0.0 {
        Ok(value)
    } else {
        Err(ModelError::Negative { what, value })
    }
}
