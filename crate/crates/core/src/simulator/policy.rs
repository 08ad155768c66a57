use serde::{Deserialize, Serialize};

use super::{EconomyState, StepError};
use crate::model::{median_wage, Ratio, HOURS_PER_YEAR};

/// How the nominal minimum wage is set each year.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PolicyRule {
    /// The nominal floor never changes.
    FixedNominal,
    /// The floor moves with the price level.
    CpiIndexed,
    /// The floor is a fixed portion of the median wage.
    KaitzIndexed { target: Ratio },
    /// The floor is a fixed portion of per-capita GDP.
    GdpcIndexed { target: Ratio },
    /// The floor's portion of per-capita GDP rises by `annual_increment`
    /// ratio points a year until it reaches `target`.
    GdpcRamp { target: Ratio, annual_increment: f64 },
    /// The floor is supplied from outside for every step.
    Manual,
}

impl PolicyRule {
    pub fn target(&self) -> Option<Ratio> {
        match *self {
            PolicyRule::KaitzIndexed { target } | PolicyRule::GdpcIndexed { target } | PolicyRule::GdpcRamp { target, .. } => {
                Some(target)
            }
            _ => None,
        }
    }

    /// Floor as a portion of next year's per-capita GDP, for rules that are
    /// stated that way.
    pub(crate) fn ratio_floor(&self, state: &EconomyState) -> Option<f64> {
        match *self {
            PolicyRule::GdpcIndexed { target } => Some(target.get()),
            PolicyRule::GdpcRamp {
                target,
                annual_increment,
            } => Some((state.floor_ratio() + annual_increment).min(target.get())),
            _ => None,
        }
    }
}

/// A floor decision for one step, overriding the rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ManualAction {
    /// Keep the nominal floor where it is.
    Hold,
    /// Nominal hourly floor.
    Floor(f64),
    /// Floor as a portion of next year's per-capita GDP.
    Ratio(f64),
}

/// Next year's nominal hourly floor under `rule`.
pub fn policy_floor(
    rule: &PolicyRule,
    state: &EconomyState,
    next_gdppc: f64,
    next_price: f64,
) -> Result<f64, StepError> {
    let floor = state.dist.min_wage();
    let next_unit = next_gdppc / HOURS_PER_YEAR;
    Ok(match *rule {
        PolicyRule::FixedNominal => floor,
        PolicyRule::CpiIndexed => floor * (next_price / state.price_level),
        PolicyRule::KaitzIndexed { target } => target.get() * median_wage(&state.dist),
        PolicyRule::GdpcIndexed { .. } | PolicyRule::GdpcRamp { .. } => {
            rule.ratio_floor(state).expect("ratio rule") * next_unit
        }
        PolicyRule::Manual => return Err(StepError::MissingManualFloor),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{WageBin, WageDistribution};

    fn state(floor: f64, gdppc: f64) -> EconomyState {
        let dist = WageDistribution::new(vec![
            WageBin::new(floor, 1.0),
            WageBin::new(floor * 2.0, 2.0),
            WageBin::new(floor * 3.0, 1.0),
        ])
        .unwrap();
        EconomyState::new(gdppc, dist, 800.0, 0.5)
    }

    fn ratio(x: f64) -> Ratio {
        Ratio::new(x).unwrap()
    }

    #[test]
    fn gdpc_indexed_two_thirds() {
        let rule = PolicyRule::GdpcIndexed { target: ratio(2.0 / 3.0) };
        let f = policy_floor(&rule, &state(10.0, 60_000.0), 62_400.0, 1.0).unwrap();
        assert!((f - 20.0).abs() < 1e-12);
    }

    #[test]
    fn fixed_and_cpi() {
        let s = state(10.0, 60_000.0);
        assert_eq!(policy_floor(&PolicyRule::FixedNominal, &s, 70_000.0, 1.1).unwrap(), 10.0);
        let cpi = policy_floor(&PolicyRule::CpiIndexed, &s, 70_000.0, 1.1).unwrap();
        assert!((cpi - 11.0).abs() < 1e-12);
    }

    #[test]
    fn kaitz_uses_lower_median() {
        let rule = PolicyRule::KaitzIndexed { target: ratio(0.5) };
        assert_eq!(policy_floor(&rule, &state(10.0, 60_000.0), 60_000.0, 1.0).unwrap(), 10.0);
    }

    #[test]
    fn ramp_steps_in_ratio_points_then_caps() {
        let rule = PolicyRule::GdpcRamp {
            target: ratio(0.666),
            annual_increment: 0.025,
        };
        let gdppc = 52_000.0;
        let mut r = 0.30;
        let mut seen = Vec::new();
        for _ in 0..20 {
            let s = state(r * gdppc / HOURS_PER_YEAR, gdppc);
            let f = policy_floor(&rule, &s, gdppc, 1.0).unwrap();
            r = f * HOURS_PER_YEAR / gdppc;
            seen.push(r);
        }
        assert!((seen[0] - 0.325).abs() < 1e-12);
        assert!((seen[1] - 0.350).abs() < 1e-12);
        assert!((seen[19] - 0.666).abs() < 1e-12);
        assert!(seen.windows(2).all(|w| w[1] >= w[0] - 1e-15));
    }

    #[test]
    fn manual_needs_a_value() {
        assert_eq!(
            policy_floor(&PolicyRule::Manual, &state(10.0, 60_000.0), 60_000.0, 1.0),
            Err(StepError::MissingManualFloor)
        );
    }

    #[test]
    fn serde_shapes() {
        let rule: PolicyRule = serde_json::from_str(r#"{"kind":"gdpc_ramp","target":0.6,"annual_increment":0.025}"#).unwrap();
        assert_eq!(rule.target(), Some(ratio(0.6)));
        let actions: Vec<ManualAction> = serde_json::from_str(r#"["hold",{"floor":7.5},{"ratio":0.45}]"#).unwrap();
        assert_eq!(actions, vec![ManualAction::Hold, ManualAction::Floor(7.5), ManualAction::Ratio(0.45)]);
    }
}
