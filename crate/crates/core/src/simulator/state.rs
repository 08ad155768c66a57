use serde::{Deserialize, Serialize};

use crate::model::{gini, Ratio, WageDistribution};

/// Economy at the start of a year.
///
/// `gini_proxy` is always derived from `dist`; a value supplied in serialized
/// input is ignored and recomputed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "StateRepr", into = "StateRepr")]
pub struct EconomyState {
    pub t: u32,
    pub gdp_per_capita: f64,
    pub dist: WageDistribution,
    pub hours_per_capita: f64,
    pub price_level: f64,
    pub high_productivity_share: f64,
    pub gini_proxy: f64,
}

#[derive(Serialize, Deserialize)]
struct StateRepr {
    #[serde(default)]
    t: u32,
    gdp_per_capita: f64,
    dist: WageDistribution,
    hours_per_capita: f64,
    #[serde(default = "unit_price")]
    price_level: f64,
    high_productivity_share: f64,
    #[serde(default)]
    gini_proxy: Option<f64>,
}

fn unit_price() -> f64 {
    1.0
}

impl From<StateRepr> for EconomyState {
    fn from(r: StateRepr) -> Self {
        let mut state = EconomyState {
            t: r.t,
            gdp_per_capita: r.gdp_per_capita,
            dist: r.dist,
            hours_per_capita: r.hours_per_capita,
            price_level: r.price_level,
            high_productivity_share: r.high_productivity_share,
            gini_proxy: 0.0,
        };
        state.gini_proxy = gini(&state.dist);
        state
    }
}

impl From<EconomyState> for StateRepr {
    fn from(s: EconomyState) -> Self {
        StateRepr {
            t: s.t,
            gdp_per_capita: s.gdp_per_capita,
            dist: s.dist,
            hours_per_capita: s.hours_per_capita,
            price_level: s.price_level,
            high_productivity_share: s.high_productivity_share,
            gini_proxy: Some(s.gini_proxy),
        }
    }
}

impl EconomyState {
    /// State at `t = 0` with unit price level.
    pub fn new(gdp_per_capita: f64, dist: WageDistribution, hours_per_capita: f64, high_productivity_share: f64) -> Self {
        let gini_proxy = gini(&dist);
        Self {
            t: 0,
            gdp_per_capita,
            dist,
            hours_per_capita,
            price_level: 1.0,
            high_productivity_share,
            gini_proxy,
        }
    }

    /// Hourly wage equal to per-capita GDP spread over a full-time year.
    pub fn hourly_unit(&self) -> f64 {
        self.gdp_per_capita / crate::model::HOURS_PER_YEAR
    }

    pub fn floor_ratio(&self) -> f64 {
        self.dist.min_wage() / self.hourly_unit()
    }
}

/// One row of simulation history.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub t: u32,
    pub nominal_min: f64,
    pub w_min: Ratio,
    pub w_mean: Ratio,
    pub labor_share: Ratio,
    pub price_level: f64,
    pub high_productivity_share: f64,
    pub gini_proxy: f64,
}

impl StepRecord {
    pub fn values(&self) -> [f64; 8] {
        [
            self.t as f64,
            self.nominal_min,
            self.w_min.get(),
            self.w_mean.get(),
            self.labor_share.get(),
            self.price_level,
            self.high_productivity_share,
            self.gini_proxy,
        ]
    }
}
