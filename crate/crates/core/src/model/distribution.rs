use serde::{Deserialize, Serialize};

use super::{non_negative, positive, ModelError};

/// One wage bin: an hourly wage and the employment-hours weight at that wage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WageBin {
    pub wage: f64,
    pub mass: f64,
}

impl WageBin {
    pub fn new(wage: f64, mass: f64) -> Self {
        Self { wage, mass }
    }
}

/// Binned hourly wage distribution with strictly increasing wages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDistribution", into = "RawDistribution")]
pub struct WageDistribution {
    bins: Vec<WageBin>,
}

#[derive(Serialize, Deserialize)]
struct RawDistribution {
    bins: Vec<WageBin>,
}

impl TryFrom<RawDistribution> for WageDistribution {
    type Error = ModelError;

    fn try_from(raw: RawDistribution) -> Result<Self, Self::Error> {
        WageDistribution::new(raw.bins)
    }
}

impl From<WageDistribution> for RawDistribution {
    fn from(d: WageDistribution) -> Self {
        RawDistribution { bins: d.bins }
    }
}

impl WageDistribution {
    pub fn new(bins: Vec<WageBin>) -> Result<Self, ModelError> {
        let mut total = 0.0;
        for (index, bin) in bins.iter().enumerate() {
            positive("bin wage", bin.wage)?;
            non_negative("bin mass", bin.mass)?;
            if index > 0 && bin.wage <= bins[index - 1].wage {
                return Err(ModelError::UnorderedBins { index });
            }
            total += bin.mass;
        }
        if total.is_nan() || total <= 0.0 {
            return Err(ModelError::EmptyDistribution);
        }
        Ok(Self { bins })
    }

    /// Builds bins at `multiple x floor` for each `(multiple, mass)` pair.
    pub fn from_multiples(floor: f64, shape: &[(f64, f64)]) -> Result<Self, ModelError> {
        let bins = shape
            .iter()
            .map(|&(multiple, mass)| {
                let wage = if multiple == 1.0 { floor } else { floor * multiple };
                WageBin::new(wage, mass)
            })
            .collect();
        Self::new(bins)
    }

    pub fn bins(&self) -> &[WageBin] {
        &self.bins
    }

    pub fn total_mass(&self) -> f64 {
        self.bins.iter().map(|b| b.mass).sum()
    }

    /// Wage of the first bin with positive mass.
    pub fn min_wage(&self) -> f64 {
        self.bins
            .iter()
            .find(|b| b.mass > 0.0)
            .map(|b| b.wage)
            .expect("validated distribution has positive mass")
    }

    pub(crate) fn min_index(&self) -> usize {
        self.bins.iter().position(|b| b.mass > 0.0).expect("validated distribution has positive mass")
    }

    pub(crate) fn from_bins_unchecked(bins: Vec<WageBin>) -> Self {
        debug_assert!(bins.windows(2).all(|w| w[0].wage <= w[1].wage));
        Self { bins }
    }
}

/// Mass-weighted mean hourly wage.
pub fn mean_wage(dist: &WageDistribution) -> f64 {
    let weighted: f64 = dist.bins.iter().map(|b| b.wage * b.mass).sum();
    weighted / dist.total_mass()
}

/// Mass-weighted median; ties resolve to the lower bin.
pub fn median_wage(dist: &WageDistribution) -> f64 {
    let half = dist.total_mass() / 2.0;
    let mut cumulative = 0.0;
    for bin in &dist.bins {
        cumulative += bin.mass;
        if bin.mass > 0.0 && cumulative >= half {
            return bin.wage;
        }
    }
    dist.bins.last().map(|b| b.wage).expect("non-empty distribution")
}

/// Mass-weighted Gini coefficient of bin wages.
pub fn gini(dist: &WageDistribution) -> f64 {
    // sum_{i,j} m_i m_j |w_i - w_j| = 2 sum_i m_i (w_i * M_<i - S_<i) for sorted wages
    let mut mass_below = 0.0;
    let mut weighted_below = 0.0;
    let mut acc = 0.0;
    for bin in &dist.bins {
        acc += bin.mass * (bin.wage * mass_below - weighted_below);
        mass_below += bin.mass;
        weighted_below += bin.mass * bin.wage;
    }
    if weighted_below == 0.0 {
        return 0.0;
    }
    acc / (mass_below * weighted_below)
}
