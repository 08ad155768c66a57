use std::fmt;

use serde::{Deserialize, Serialize};

use super::{non_negative, ModelError};

/// Full-time work year used to convert hourly wages to annual amounts.
pub const HOURS_PER_YEAR: f64 = 2080.0;

/// A dimensionless, finite, non-negative measure such as a wage divided by
/// per-capita GDP.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Ratio(f64);

impl Ratio {
    pub fn new(value: f64) -> Result<Self, ModelError> {
        non_negative("ratio", value).map(Ratio)
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Ratio {
    type Error = ModelError;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        Ratio::new(value)
    }
}

impl From<Ratio> for f64 {
    fn from(r: Ratio) -> f64 {
        r.0
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}
