//! Annual series bundled with the crate. See `data/README.md` for how each
//! column was assembled.

use crate::indicators::{read_series, AnnualObservation};

pub const US_ANNUAL_CSV: &str = include_str!("../data/us_annual.csv");
pub const US_OES_KAITZ_CSV: &str = include_str!("../data/us_oes_kaitz.csv");
pub const HUNGARY_CSV: &str = include_str!("../data/hungary.csv");

/// Deflator base year of the US annual series (deflator = 1.0).
pub const US_DEFLATOR_BASE_YEAR: i32 = 1960;

fn parse(csv: &str) -> Vec<AnnualObservation> {
    read_series(csv.as_bytes()).expect("bundled fixture is valid")
}

/// United States 1940-2019: federal minimum, mean wage, nonsupervisory wage,
/// per-capita GDP, CPI-U-RS-style deflator, sparse Gini, union rate.
pub fn us_annual() -> Vec<AnnualObservation> {
    parse(US_ANNUAL_CSV)
}

/// United States occupational-survey years with median and mean wages.
pub fn us_oes_kaitz() -> Vec<AnnualObservation> {
    parse(US_OES_KAITZ_CSV)
}

/// Hungary 1999-2003 in forints.
pub fn hungary() -> Vec<AnnualObservation> {
    parse(HUNGARY_CSV)
}
