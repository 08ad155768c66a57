use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{AnnualObservation, IndicatorError};
use crate::model::{ratio_nominal, Ratio, HOURS_PER_YEAR};

/// Hourly amount over a 2,080-hour year.
pub fn annualize(hourly: f64) -> f64 {
    hourly * HOURS_PER_YEAR
}

/// Dimensionless wage measures for one year.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WageRatios {
    pub year: i32,
    pub w_min: Ratio,
    pub w_mean: Ratio,
    pub kaitz: Option<Ratio>,
    pub min_to_mean: Ratio,
    pub min_to_nonsupervisory: Option<Ratio>,
}

fn sorted_unique(series: &[AnnualObservation]) -> Result<Vec<&AnnualObservation>, IndicatorError> {
    if series.is_empty() {
        return Err(IndicatorError::EmptySeries);
    }
    let mut seen = BTreeSet::new();
    let mut dups = BTreeSet::new();
    for row in series {
        if !seen.insert(row.year) {
            dups.insert(row.year);
        }
    }
    if !dups.is_empty() {
        return Err(IndicatorError::DuplicateYears(dups.into_iter().collect()));
    }
    let mut rows: Vec<&AnnualObservation> = series.iter().collect();
    rows.sort_by_key(|r| r.year);
    Ok(rows)
}

/// Per-year ratios, sorted by year. Wages are annualized before dividing by
/// per-capita GDP.
pub fn ratios(series: &[AnnualObservation]) -> Result<Vec<WageRatios>, IndicatorError> {
    sorted_unique(series)?
        .into_iter()
        .map(|row| {
            let min = row.min_wage_hourly;
            Ok(WageRatios {
                year: row.year,
                w_min: ratio_nominal(annualize(min), row.gdp_per_capita)?,
                w_mean: ratio_nominal(annualize(row.mean_wage_hourly), row.gdp_per_capita)?,
                kaitz: row.median_wage_hourly.map(|m| ratio_nominal(min, m)).transpose()?,
                min_to_mean: ratio_nominal(min, row.mean_wage_hourly)?,
                min_to_nonsupervisory: row
                    .nonsupervisory_wage_hourly
                    .map(|n| ratio_nominal(min, n))
                    .transpose()?,
            })
        })
        .collect()
}

/// Real annual wages in base-year currency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealWages {
    pub year: i32,
    pub real_annual_min_wage: f64,
    pub real_annual_mean_wage: f64,
}

pub fn real_series(series: &[AnnualObservation], base_year: i32) -> Result<Vec<RealWages>, IndicatorError> {
    let rows = sorted_unique(series)?;
    let by_year: BTreeMap<i32, &AnnualObservation> = rows.iter().map(|r| (r.year, *r)).collect();
    let base = by_year.get(&base_year).ok_or(IndicatorError::MissingBaseYear(base_year))?;
    let base_deflator = base.deflator.ok_or(IndicatorError::MissingDeflator(base_year))?;
    rows.iter()
        .map(|row| {
            let deflator = row.deflator.ok_or(IndicatorError::MissingDeflator(row.year))?;
            let relative = deflator / base_deflator;
            Ok(RealWages {
                year: row.year,
                real_annual_min_wage: annualize(row.min_wage_hourly) / relative,
                real_annual_mean_wage: annualize(row.mean_wage_hourly) / relative,
            })
        })
        .collect()
}

/// Minimum-to-median next to minimum-to-mean for the same year.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KaitzRow {
    pub year: i32,
    pub kaitz: Ratio,
    pub min_to_mean: Ratio,
}

/// Pairs the Kaitz index with the minimum-to-mean ratio. Rows without a
/// median are skipped with a warning.
pub fn kaitz_divergence(series: &[AnnualObservation]) -> Result<Vec<KaitzRow>, IndicatorError> {
    let mut out = Vec::new();
    for row in sorted_unique(series)? {
        let Some(median) = row.median_wage_hourly else {
            log::warn!("year {}: no median wage, skipped", row.year);
            continue;
        };
        // through the GDP-per-capita measures: W_min / W_mean
        let w_min = annualize(row.min_wage_hourly) / row.gdp_per_capita;
        let w_mean = annualize(row.mean_wage_hourly) / row.gdp_per_capita;
        out.push(KaitzRow {
            year: row.year,
            kaitz: ratio_nominal(row.min_wage_hourly, median)?,
            min_to_mean: Ratio::new(w_min / w_mean)?,
        });
    }
    Ok(out)
}

/// Years whose minimum-to-nonsupervisory ratio lies within `width` of `center`.
pub fn nonsupervisory_band(
    series: &[AnnualObservation],
    center: f64,
    width: f64,
) -> Result<Vec<i32>, IndicatorError> {
    let rows = sorted_unique(series)?;
    if rows.iter().all(|r| r.nonsupervisory_wage_hourly.is_none()) {
        return Err(IndicatorError::MissingColumn("nonsupervisory_wage_hourly"));
    }
    Ok(rows
        .iter()
        .filter_map(|r| {
            let nonsup = r.nonsupervisory_wage_hourly?;
            ((r.min_wage_hourly / nonsup - center).abs() <= width).then_some(r.year)
        })
        .collect())
}
