use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{EconomyState, ManualAction, PolicyRule};
use crate::model::{CompensationBreakdown, CompressionParams, TransformUnit};

/// Low- and high-productivity production methods at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Horizon {
    pub low: TransformUnit,
    pub high: TransformUnit,
}

/// Full setup of a simulation run. This is also the session-creation payload
/// of the HTTP service.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub initial: EconomyState,
    pub rule: PolicyRule,
    pub real_growth_rate: f64,
    pub inflation_rate: f64,
    #[serde(default)]
    pub compression: CompressionParams,
    #[serde(default)]
    pub compensation: CompensationBreakdown,
    #[serde(default = "default_alpha")]
    pub passthrough_alpha: f64,
    pub horizon: Horizon,
    pub steps: u32,
    /// Reserved for stochastic extensions; the engine is deterministic.
    #[serde(default)]
    pub seed: u64,
    /// Floor decisions keyed by the step they apply to.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<u32, ManualAction>,
}

fn default_alpha() -> f64 {
    0.75
}

/// A validation failure tied to a dotted field path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldError {
    pub field: String,
    pub message: String,
}

impl FieldError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

/// Largest admissible policy target.
pub const MAX_TARGET: f64 = 1.2;

impl ScenarioConfig {
    /// Every constraint violation in the scenario.
    pub fn validate(&self) -> Vec<FieldError> {
        let mut errors = Vec::new();
        let mut check = |ok: bool, field: &str, message: String| {
            if !ok {
                errors.push(FieldError::new(field, message));
            }
        };

        check(self.steps >= 1, "steps", format!("must be at least 1, got {}", self.steps));
        for (field, rate) in [
            ("real_growth_rate", self.real_growth_rate),
            ("inflation_rate", self.inflation_rate),
        ] {
            check(rate.is_finite() && rate > -1.0, field, format!("must be finite and above -1, got {rate}"));
        }
        let alpha = self.passthrough_alpha;
        check((0.0..=1.0).contains(&alpha), "passthrough_alpha", format!("must lie in [0, 1], got {alpha}"));

        let s = &self.initial;
        for (field, value) in [
            ("initial.gdp_per_capita", s.gdp_per_capita),
            ("initial.hours_per_capita", s.hours_per_capita),
            ("initial.price_level", s.price_level),
        ] {
            check(value.is_finite() && value > 0.0, field, format!("must be positive, got {value}"));
        }
        let share = s.high_productivity_share;
        check(
            (0.0..=1.0).contains(&share),
            "initial.high_productivity_share",
            format!("must lie in [0, 1], got {share}"),
        );

        let ceiling = self.compression.ceiling_ratio.get();
        check(ceiling > 0.0, "compression.ceiling_ratio", format!("must be positive, got {ceiling}"));
        if s.gdp_per_capita.is_finite() && s.gdp_per_capita > 0.0 {
            let floor_ratio = s.floor_ratio();
            check(
                floor_ratio < ceiling,
                "initial.dist",
                format!("minimum wage ratio {floor_ratio} must be below the compression ceiling {ceiling}"),
            );
        }

        if let Some(target) = self.rule.target() {
            let t = target.get();
            check(
                t > 0.0 && t <= MAX_TARGET,
                "rule.target",
                format!("must lie in (0, {MAX_TARGET}], got {t}"),
            );
            if !matches!(self.rule, PolicyRule::KaitzIndexed { .. }) {
                check(
                    t < ceiling,
                    "rule.target",
                    format!("must be below the compression ceiling {ceiling}, got {t}"),
                );
            }
        }
        if let PolicyRule::GdpcRamp { annual_increment, .. } = self.rule {
            check(
                annual_increment.is_finite() && annual_increment > 0.0,
                "rule.annual_increment",
                format!("must be positive, got {annual_increment}"),
            );
        }

        for (&step, action) in &self.actions {
            let field = format!("actions.{step}");
            check(step >= 1, &field, "steps are numbered from 1".to_string());
            match *action {
                ManualAction::Hold => {}
                ManualAction::Floor(v) => {
                    check(v.is_finite() && v > 0.0, &field, format!("floor must be positive, got {v}"))
                }
                ManualAction::Ratio(v) => {
                    check(v.is_finite() && v > 0.0, &field, format!("ratio must be positive, got {v}"));
                    check(v < ceiling, &field, format!("ratio must be below the compression ceiling {ceiling}, got {v}"));
                }
            }
        }
        errors
    }
}
