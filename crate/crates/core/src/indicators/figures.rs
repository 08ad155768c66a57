use std::fmt;
use std::str::FromStr;

use super::{ratios, AnnualObservation, IndicatorError};
use crate::table::Table;

/// The numeric series behind each of the three wage figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Figure {
    /// W_min, W_mean and the union participation rate over time.
    MinGdpUnion,
    /// W_mean against W_min, one point per year.
    MinMeanScatter,
    /// W_min next to the Gini coefficient in years that report one.
    MinGini,
}

impl Figure {
    pub const ALL: [Figure; 3] = [Figure::MinGdpUnion, Figure::MinMeanScatter, Figure::MinGini];

    pub fn name(self) -> &'static str {
        match self {
            Figure::MinGdpUnion => "min-gdp-union",
            Figure::MinMeanScatter => "min-mean-scatter",
            Figure::MinGini => "min-gini",
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Figure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Figure::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| {
            let names: Vec<_> = Figure::ALL.iter().map(|f| f.name()).collect();
            format!("unknown figure `{s}`; valid names: {}", names.join(", "))
        })
    }
}

pub fn figure_series(series: &[AnnualObservation], which: Figure) -> Result<Table, IndicatorError> {
    let measures = ratios(series)?;
    let mut rows: Vec<&AnnualObservation> = series.iter().collect();
    rows.sort_by_key(|r| r.year);

    let table = match which {
        Figure::MinGdpUnion => {
            if rows.iter().all(|r| r.union_rate.is_none()) {
                return Err(IndicatorError::MissingColumn("union_rate"));
            }
            let mut t = Table::new(["year", "w_min", "w_mean", "union_rate"]);
            for (m, obs) in measures.iter().zip(&rows) {
                t.push(vec![
                    Some(m.year as f64),
                    Some(m.w_min.get()),
                    Some(m.w_mean.get()),
                    obs.union_rate,
                ]);
            }
            t
        }
        Figure::MinMeanScatter => {
            let mut t = Table::new(["year", "w_min", "w_mean"]);
            for m in &measures {
                t.push(vec![Some(m.year as f64), Some(m.w_min.get()), Some(m.w_mean.get())]);
            }
            t
        }
        Figure::MinGini => {
            if rows.iter().all(|r| r.gini.is_none()) {
                return Err(IndicatorError::MissingColumn("gini"));
            }
            let mut t = Table::new(["year", "w_min", "gini"]);
            for (m, obs) in measures.iter().zip(&rows) {
                if let Some(g) = obs.gini {
                    t.push(vec![Some(m.year as f64), Some(m.w_min.get()), Some(g)]);
                }
            }
            t
        }
    };
    Ok(table)
}
