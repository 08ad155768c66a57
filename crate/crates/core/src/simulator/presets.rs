//! Bundled scenarios.

use std::collections::BTreeMap;

use super::{EconomyState, Horizon, ManualAction, PolicyRule, ScenarioConfig};
use crate::model::{CompensationBreakdown, CompressionParams, Ratio, TransformUnit, WageBin, WageDistribution, HOURS_PER_YEAR};

pub const NAMES: [&str; 4] = ["hungary", "us-baseline", "us-fixed-nominal", "gdpc-two-thirds"];

pub fn preset(name: &str) -> Option<ScenarioConfig> {
    match name {
        "hungary" => Some(hungary()),
        "us-baseline" => Some(us_baseline()),
        "us-fixed-nominal" => Some(us_fixed_nominal()),
        "gdpc-two-thirds" => Some(gdpc_two_thirds()),
        _ => None,
    }
}

/// Wage shape as (multiple of the floor, mass).
const HUNGARY_SHAPE: [(f64, f64); 13] = [
    (1.0, 0.12),
    (1.2, 0.08),
    (1.4, 0.08),
    (1.7, 0.09),
    (2.0, 0.09),
    (2.4, 0.09),
    (2.8, 0.08),
    (3.3, 0.08),
    (4.0, 0.08),
    (5.0, 0.07),
    (6.5, 0.06),
    (9.0, 0.05),
    (13.0, 0.03),
];

/// Hungary 2000-2002 in forints: two manual raises taking the minimum from
/// 0.406 to 0.606 of per-capita GDP.
pub fn hungary() -> ScenarioConfig {
    let gdppc = 753_718.0;
    let floor = 0.406 * gdppc / HOURS_PER_YEAR;
    let dist = WageDistribution::from_multiples(floor, &HUNGARY_SHAPE).expect("constant shape");
    ScenarioConfig {
        initial: EconomyState::new(gdppc, dist, 750.0, 0.3),
        rule: PolicyRule::Manual,
        real_growth_rate: 0.045,
        inflation_rate: 0.05,
        compression: CompressionParams::default(),
        compensation: CompensationBreakdown::default(),
        passthrough_alpha: 0.75,
        horizon: Horizon {
            low: TransformUnit::new(1.0, floor, 60.0).expect("constant unit"),
            high: TransformUnit::new(0.3, 700.0, 70.0).expect("constant unit"),
        },
        steps: 2,
        seed: 0,
        actions: BTreeMap::from([(1, ManualAction::Ratio(0.552)), (2, ManualAction::Ratio(0.606))]),
    }
}

/// United States 2019 hourly wage bins in dollars.
const US_2019_BINS: [(f64, f64); 21] = [
    (7.25, 1.6),
    (8.0, 2.0),
    (9.0, 4.0),
    (10.0, 6.0),
    (11.0, 6.5),
    (12.0, 7.5),
    (13.0, 7.0),
    (14.0, 7.0),
    (15.0, 7.5),
    (17.5, 14.0),
    (20.0, 13.0),
    (22.5, 10.0),
    (25.0, 9.0),
    (30.0, 14.0),
    (35.0, 10.0),
    (40.0, 8.0),
    (50.0, 10.0),
    (60.0, 6.0),
    (75.0, 5.0),
    (100.0, 4.0),
    (150.0, 1.5),
];

/// United States from 2019 with the federal minimum held at $7.25.
pub fn us_baseline() -> ScenarioConfig {
    let bins = US_2019_BINS.iter().map(|&(w, m)| WageBin::new(w, m)).collect();
    let dist = WageDistribution::new(bins).expect("constant bins");
    ScenarioConfig {
        initial: EconomyState::new(65_100.82, dist, 850.0, 0.5),
        rule: PolicyRule::FixedNominal,
        real_growth_rate: 0.02,
        inflation_rate: 0.025,
        compression: CompressionParams::default(),
        compensation: CompensationBreakdown::default(),
        passthrough_alpha: 0.75,
        horizon: Horizon {
            low: TransformUnit::new(1.0, 7.25, 4.0).expect("constant unit"),
            high: TransformUnit::new(0.25, 48.0, 6.0).expect("constant unit"),
        },
        steps: 20,
        seed: 0,
        actions: BTreeMap::new(),
    }
}

/// The US economy with zero inflation and a fixed nominal floor for 30 years.
pub fn us_fixed_nominal() -> ScenarioConfig {
    ScenarioConfig {
        inflation_rate: 0.0,
        steps: 30,
        ..us_baseline()
    }
}

/// The US economy ramping the floor by 2.5 points of per-capita GDP a year
/// up to two thirds.
pub fn gdpc_two_thirds() -> ScenarioConfig {
    ScenarioConfig {
        rule: PolicyRule::GdpcRamp {
            target: Ratio::new(2.0 / 3.0).expect("constant"),
            annual_increment: 0.025,
        },
        steps: 40,
        ..us_baseline()
    }
}
