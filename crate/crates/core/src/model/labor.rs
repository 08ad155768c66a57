use serde::{Deserialize, Serialize};

use super::{finite, non_negative, positive, ModelError, Ratio};

/// Labor share from mean hourly total compensation relative to per-capita
/// GDP (`t_mean`, units 1/hour) and hours worked per capita per year.
pub fn labor_share(t_mean: f64, hours_per_capita: f64) -> Result<Ratio, ModelError> {
    let t_mean = positive("t_mean", t_mean)?;
    let hours = positive("hours_per_capita", hours_per_capita)?;
    Ratio::new(t_mean * hours)
}

/// Aggregate compensation accounts for one economy-year.
///
/// `t_mean` is derived from the aggregates, so both routes to the labor share
/// describe the same economy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaborShareAccount {
    t_mean: f64,
    hours_per_capita: f64,
    population: f64,
    gdp: f64,
    total_compensation: f64,
}

impl LaborShareAccount {
    pub fn from_aggregates(
        total_compensation: f64,
        gdp: f64,
        population: f64,
        hours_per_capita: f64,
    ) -> Result<Self, ModelError> {
        let total_compensation = positive("total_compensation", total_compensation)?;
        let gdp = positive("gdp", gdp)?;
        let population = positive("population", population)?;
        let hours_per_capita = positive("hours_per_capita", hours_per_capita)?;

        let hourly_compensation = total_compensation / (hours_per_capita * population);
        let gdp_per_capita = gdp / population;
        let t_mean = finite("t_mean", hourly_compensation / gdp_per_capita)?;

        let share = total_compensation / gdp;
        if share > 1.0 {
            log::warn!("labor share {share} exceeds 1; check the input accounts");
        }
        Ok(Self {
            t_mean,
            hours_per_capita,
            population,
            gdp,
            total_compensation,
        })
    }

    pub fn t_mean(&self) -> f64 {
        self.t_mean
    }

    pub fn hours_per_capita(&self) -> f64 {
        self.hours_per_capita
    }

    pub fn population(&self) -> f64 {
        self.population
    }

    pub fn gdp(&self) -> f64 {
        self.gdp
    }

    pub fn total_compensation(&self) -> f64 {
        self.total_compensation
    }

    /// Total hours worked in the economy.
    pub fn hours_worked(&self) -> f64 {
        self.hours_per_capita * self.population
    }

    /// Labor share by definition: total compensation over GDP.
    pub fn labor_share(&self) -> f64 {
        self.total_compensation / self.gdp
    }

    /// Scales every currency amount by `factor`.
    pub fn rescale_currency(&self, factor: f64) -> Result<Self, ModelError> {
        positive("factor", factor)?;
        Self::from_aggregates(
            self.total_compensation * factor,
            self.gdp * factor,
            self.population,
            self.hours_per_capita,
        )
    }
}

/// Relative discrepancy between `T_mean x Hours Worked / C` and
/// `Total Compensation / GDP`.
pub fn verify_identity(account: &LaborShareAccount) -> f64 {
    let via_t_mean = account.t_mean * account.hours_worked() / account.population;
    let by_definition = account.labor_share();
    (via_t_mean - by_definition).abs() / by_definition.abs()
}

/// Components of total compensation as fractions of the whole.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBreakdown", into = "RawBreakdown")]
pub struct CompensationBreakdown {
    wage_share: f64,
    health_insurance_share: f64,
    social_insurance_share: f64,
    other_share: f64,
}

#[derive(Serialize, Deserialize)]
struct RawBreakdown {
    wage_share: f64,
    health_insurance_share: f64,
    social_insurance_share: f64,
    other_share: f64,
}

impl TryFrom<RawBreakdown> for CompensationBreakdown {
    type Error = ModelError;

    fn try_from(raw: RawBreakdown) -> Result<Self, Self::Error> {
        Self::new(
            raw.wage_share,
            raw.health_insurance_share,
            raw.social_insurance_share,
            raw.other_share,
        )
    }
}

impl From<CompensationBreakdown> for RawBreakdown {
    fn from(b: CompensationBreakdown) -> Self {
        RawBreakdown {
            wage_share: b.wage_share,
            health_insurance_share: b.health_insurance_share,
            social_insurance_share: b.social_insurance_share,
            other_share: b.other_share,
        }
    }
}

impl CompensationBreakdown {
    pub fn new(
        wage_share: f64,
        health_insurance_share: f64,
        social_insurance_share: f64,
        other_share: f64,
    ) -> Result<Self, ModelError> {
        let shares = [
            ("wage_share", wage_share),
            ("health_insurance_share", health_insurance_share),
            ("social_insurance_share", social_insurance_share),
            ("other_share", other_share),
        ];
        for (what, value) in shares {
            finite(what, value)?;
            if !(0.0..=1.0).contains(&value) {
                return Err(ModelError::OutOfRange {
                    what,
                    value,
                    lo: 0.0,
                    hi: 1.0,
                });
            }
        }
        let sum: f64 = shares.iter().map(|(_, v)| v).sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(ModelError::SharesDoNotSumToOne(sum));
        }
        Ok(Self {
            wage_share,
            health_insurance_share,
            social_insurance_share,
            other_share,
        })
    }

    pub fn wage_share(&self) -> f64 {
        self.wage_share
    }

    pub fn health_insurance_share(&self) -> f64 {
        self.health_insurance_share
    }

    pub fn social_insurance_share(&self) -> f64 {
        self.social_insurance_share
    }

    pub fn other_share(&self) -> f64 {
        self.other_share
    }
}

impl Default for CompensationBreakdown {
    /// Private-industry shares: wages 72%, health insurance 7.5%, legally
    /// required social insurance 8.5%, everything else 12%.
    fn default() -> Self {
        Self {
            wage_share: 0.72,
            health_insurance_share: 0.075,
            social_insurance_share: 0.085,
            other_share: 0.12,
        }
    }
}

/// Total compensation measure implied by a wage measure and the wage share of
/// compensation.
pub fn t_mean_from_wage(w_mean: Ratio, breakdown: &CompensationBreakdown) -> Result<Ratio, ModelError> {
    if breakdown.wage_share == 0.0 {
        return Err(ModelError::ZeroWageShare);
    }
    Ratio::new(w_mean.get() / breakdown.wage_share)
}

/// Nominal wage over nominal per-capita GDP on the same time basis.
pub fn ratio_nominal(nominal_wage: f64, nominal_gdppc: f64) -> Result<Ratio, ModelError> {
    let wage = non_negative("nominal_wage", nominal_wage)?;
    let gdppc = positive("nominal_gdppc", nominal_gdppc)?;
    Ratio::new(wage / gdppc)
}

/// Returns `(nominal / nominal, real / real)` for the same wage and per-capita
/// GDP; the deflator cancels so the two agree up to rounding.
pub fn deflator_invariance(
    nominal_wage: f64,
    nominal_gdppc: f64,
    deflator: f64,
) -> Result<(Ratio, Ratio), ModelError> {
    let deflator = positive("deflator", deflator)?;
    let nominal = ratio_nominal(nominal_wage, nominal_gdppc)?;
    let real = ratio_nominal(nominal_wage / deflator, nominal_gdppc / deflator)?;
    Ok((nominal, real))
}

/// Per-capita GDP as labor productivity x hours per worker x employment ratio.
pub fn decompose_gdppc(labor_productivity: f64, avg_hours_per_worker: f64, employment_ratio: f64) -> f64 {
    labor_productivity * avg_hours_per_worker * employment_ratio
}
