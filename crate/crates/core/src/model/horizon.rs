use serde::{Deserialize, Serialize};

use super::{non_negative, positive, ModelError};

/// A production method that turns one unit of input into one unit of output.
///
/// Cost per unit is the labor it uses at the given wage plus everything else
/// embedded in the supply chain (rents, profits, capital services).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawUnit", into = "RawUnit")]
pub struct TransformUnit {
    labor_hours_per_unit: f64,
    hourly_wage: f64,
    non_labor_cost_per_unit: f64,
}

#[derive(Serialize, Deserialize)]
struct RawUnit {
    labor_hours_per_unit: f64,
    hourly_wage: f64,
    non_labor_cost_per_unit: f64,
}

impl TryFrom<RawUnit> for TransformUnit {
    type Error = ModelError;

    fn try_from(raw: RawUnit) -> Result<Self, Self::Error> {
        TransformUnit::new(raw.labor_hours_per_unit, raw.hourly_wage, raw.non_labor_cost_per_unit)
    }
}

impl From<TransformUnit> for RawUnit {
    fn from(u: TransformUnit) -> Self {
        RawUnit {
            labor_hours_per_unit: u.labor_hours_per_unit,
            hourly_wage: u.hourly_wage,
            non_labor_cost_per_unit: u.non_labor_cost_per_unit,
        }
    }
}

impl TransformUnit {
    pub fn new(labor_hours_per_unit: f64, hourly_wage: f64, non_labor_cost_per_unit: f64) -> Result<Self, ModelError> {
        Ok(Self {
            labor_hours_per_unit: positive("labor_hours_per_unit", labor_hours_per_unit)?,
            hourly_wage: non_negative("hourly_wage", hourly_wage)?,
            non_labor_cost_per_unit: non_negative("non_labor_cost_per_unit", non_labor_cost_per_unit)?,
        })
    }

    pub fn labor_hours_per_unit(&self) -> f64 {
        self.labor_hours_per_unit
    }

    pub fn hourly_wage(&self) -> f64 {
        self.hourly_wage
    }

    pub fn non_labor_cost_per_unit(&self) -> f64 {
        self.non_labor_cost_per_unit
    }

    pub fn with_hourly_wage(&self, hourly_wage: f64) -> Result<Self, ModelError> {
        Self::new(self.labor_hours_per_unit, hourly_wage, self.non_labor_cost_per_unit)
    }
}

/// Which side of the productivity equilibrium horizon a pair of units sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HorizonSide {
    LowCheaper,
    HighCheaper,
    Equilibrium,
}

pub fn transform_cost(unit: &TransformUnit) -> f64 {
    unit.labor_hours_per_unit * unit.hourly_wage + unit.non_labor_cost_per_unit
}

/// Classifies a low/high productivity pair. Costs within `tol` of each other
/// are at equilibrium.
pub fn horizon_side(low: &TransformUnit, high: &TransformUnit, tol: f64) -> HorizonSide {
    let low_cost = transform_cost(low);
    let high_cost = transform_cost(high);
    if low_cost < high_cost - tol {
        HorizonSide::LowCheaper
    } else if high_cost < low_cost - tol {
        HorizonSide::HighCheaper
    } else {
        HorizonSide::Equilibrium
    }
}

/// Low-productivity hourly wage at which both units cost the same.
///
/// A negative result means the high-productivity unit is cheaper at any
/// non-negative wage.
pub fn crossing_wage(low: &TransformUnit, high: &TransformUnit) -> f64 {
    (transform_cost(high) - low.non_labor_cost_per_unit) / low.labor_hours_per_unit
}
