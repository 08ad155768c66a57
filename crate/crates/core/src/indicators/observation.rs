use std::collections::HashMap;
use std::fmt;
use std::io::Read;

use serde::{Deserialize, Serialize};

use super::IngestError;

/// One year of raw nominal data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnualObservation {
    pub year: i32,
    pub min_wage_hourly: f64,
    pub mean_wage_hourly: f64,
    pub median_wage_hourly: Option<f64>,
    pub nonsupervisory_wage_hourly: Option<f64>,
    pub gdp_per_capita: f64,
    pub deflator: Option<f64>,
    pub gini: Option<f64>,
    pub union_rate: Option<f64>,
}

impl AnnualObservation {
    /// A row with only the required columns filled in.
    pub fn new(year: i32, min_wage_hourly: f64, mean_wage_hourly: f64, gdp_per_capita: f64) -> Self {
        Self {
            year,
            min_wage_hourly,
            mean_wage_hourly,
            median_wage_hourly: None,
            nonsupervisory_wage_hourly: None,
            gdp_per_capita,
            deflator: None,
            gini: None,
            union_rate: None,
        }
    }

    /// Multiplies every monetary column by `factor`.
    pub fn rescaled(&self, factor: f64) -> Self {
        Self {
            min_wage_hourly: self.min_wage_hourly * factor,
            mean_wage_hourly: self.mean_wage_hourly * factor,
            median_wage_hourly: self.median_wage_hourly.map(|v| v * factor),
            nonsupervisory_wage_hourly: self.nonsupervisory_wage_hourly.map(|v| v * factor),
            gdp_per_capita: self.gdp_per_capita * factor,
            ..self.clone()
        }
    }

    /// Row-level invariant violations as `(column, message)` pairs.
    pub fn check(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        let mut money = |column: &'static str, v: Option<f64>| {
            if let Some(v) = v {
                if !(v.is_finite() && v > 0.0) {
                    out.push((column, format!("must be a positive number, got {v}")));
                }
            }
        };
        money("min_wage_hourly", Some(self.min_wage_hourly));
        money("mean_wage_hourly", Some(self.mean_wage_hourly));
        money("median_wage_hourly", self.median_wage_hourly);
        money("nonsupervisory_wage_hourly", self.nonsupervisory_wage_hourly);
        money("gdp_per_capita", Some(self.gdp_per_capita));
        money("deflator", self.deflator);
        for (column, v) in [("gini", self.gini), ("union_rate", self.union_rate)] {
            if let Some(v) = v {
                if !(0.0..=1.0).contains(&v) {
                    out.push((column, format!("must lie in [0, 1], got {v}")));
                }
            }
        }
        if self.min_wage_hourly > self.mean_wage_hourly {
            out.push((
                "mean_wage_hourly",
                format!(
                    "mean wage {} is below the minimum wage {}",
                    self.mean_wage_hourly, self.min_wage_hourly
                ),
            ));
        }
        out
    }
}

/// Canonical column order of the annual series CSV.
pub const COLUMNS: [&str; 9] = [
    "year",
    "min_wage_hourly",
    "mean_wage_hourly",
    "median_wage_hourly",
    "nonsupervisory_wage_hourly",
    "gdp_per_capita",
    "deflator",
    "gini",
    "union_rate",
];

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Required,
    Money,
    Fraction,
}

const REQUIRED: [&str; 4] = ["year", "min_wage_hourly", "mean_wage_hourly", "gdp_per_capita"];

/// A problem found while validating a series file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub line: u64,
    pub column: Option<String>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.column {
            Some(c) => write!(f, "line {}: {}: {}", self.line, c, self.message),
            None => write!(f, "line {}: {}", self.line, self.message),
        }
    }
}

/// Parses and validates an annual series, collecting every violation.
pub fn read_series<R: Read>(input: R) -> Result<Vec<AnnualObservation>, IngestError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let headers = reader.headers()?.clone();

    let mut violations = Vec::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, name) in headers.iter().enumerate() {
        match COLUMNS.iter().find(|c| **c == name) {
            Some(c) => {
                if index.insert(c, i).is_some() {
                    violations.push(Violation {
                        line: 1,
                        column: Some(name.to_string()),
                        message: "column appears more than once".into(),
                    });
                }
            }
            None => violations.push(Violation {
                line: 1,
                column: Some(name.to_string()),
                message: "unknown column".into(),
            }),
        }
    }
    for c in REQUIRED {
        if !index.contains_key(c) {
            violations.push(Violation {
                line: 1,
                column: Some(c.to_string()),
                message: "required column is missing".into(),
            });
        }
    }
    if !violations.is_empty() {
        return Err(IngestError::Invalid(violations));
    }

    let mut rows = Vec::new();
    let mut seen: HashMap<i32, u64> = HashMap::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let mut row_violations = Vec::new();
        let cell = |column: &'static str| -> Option<&str> {
            index.get(column).and_then(|&i| record.get(i)).filter(|s| !s.is_empty())
        };

        let number = |column: &'static str, kind: Kind, out: &mut Vec<Violation>| -> Option<f64> {
            let mut fail = |message: String| {
                out.push(Violation {
                    line,
                    column: Some(column.into()),
                    message,
                })
            };
            let text = match cell(column) {
                None => {
                    if kind == Kind::Required {
                        fail("required value is empty".into());
                    }
                    return None;
                }
                Some(text) => text,
            };
            let v = match text.parse::<f64>() {
                Ok(v) if v.is_finite() => v,
                _ => {
                    fail(format!("not a finite decimal number: {text:?}"));
                    return None;
                }
            };
            match kind {
                Kind::Required | Kind::Money if v <= 0.0 => {
                    fail(format!("must be a positive number, got {v}"));
                    None
                }
                Kind::Fraction if !(0.0..=1.0).contains(&v) => {
                    fail(format!("must lie in [0, 1], got {v}"));
                    None
                }
                _ => Some(v),
            }
        };

        let year = match index.get("year").and_then(|&i| record.get(i)) {
            Some(text) => match text.parse::<i32>() {
                Ok(y) => Some(y),
                Err(_) => {
                    row_violations.push(Violation {
                        line,
                        column: Some("year".into()),
                        message: format!("not an integer year: {text:?}"),
                    });
                    None
                }
            },
            None => None,
        };
        let min = number("min_wage_hourly", Kind::Required, &mut row_violations);
        let mean = number("mean_wage_hourly", Kind::Required, &mut row_violations);
        let median = number("median_wage_hourly", Kind::Money, &mut row_violations);
        let nonsup = number("nonsupervisory_wage_hourly", Kind::Money, &mut row_violations);
        let gdppc = number("gdp_per_capita", Kind::Required, &mut row_violations);
        let deflator = number("deflator", Kind::Money, &mut row_violations);
        let gini = number("gini", Kind::Fraction, &mut row_violations);
        let union_rate = number("union_rate", Kind::Fraction, &mut row_violations);

        if let Some(y) = year {
            if let Some(first) = seen.get(&y) {
                row_violations.push(Violation {
                    line,
                    column: Some("year".into()),
                    message: format!("duplicate year {y} (first seen on line {first})"),
                });
            } else {
                seen.insert(y, line);
            }
        }

        if let (Some(year), Some(min), Some(mean), Some(gdppc)) = (year, min, mean, gdppc) {
            let obs = AnnualObservation {
                year,
                min_wage_hourly: min,
                mean_wage_hourly: mean,
                median_wage_hourly: median,
                nonsupervisory_wage_hourly: nonsup,
                gdp_per_capita: gdppc,
                deflator,
                gini,
                union_rate,
            };
            if row_violations.is_empty() {
                for (column, message) in obs.check() {
                    row_violations.push(Violation {
                        line,
                        column: Some(column.into()),
                        message,
                    });
                }
            }
            rows.push(obs);
        }
        violations.extend(row_violations);
    }

    if !violations.is_empty() {
        return Err(IngestError::Invalid(violations));
    }
    if rows.is_empty() {
        return Err(IngestError::Invalid(vec![Violation {
            line: 1,
            column: None,
            message: "file has no data rows".into(),
        }]));
    }
    Ok(rows)
}

/// Reads an annual series from a file path.
pub fn load_series(path: impl AsRef<std::path::Path>) -> Result<Vec<AnnualObservation>, IngestError> {
    let file = std::fs::File::open(path.as_ref()).map_err(|source| IngestError::Io {
        path: path.as_ref().display().to_string(),
        source,
    })?;
    read_series(std::io::BufReader::new(file))
}
