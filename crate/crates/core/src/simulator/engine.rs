use super::{policy_floor, EconomyState, ManualAction, ScenarioConfig, SimError, StepError, StepRecord};
use crate::model::{
    compress, gini, horizon_side, labor_share, mean_wage, sag, t_mean_from_wage, CompressionParams, HorizonSide,
    ModelError, Ratio, TransformUnit, WageDistribution, HOURS_PER_YEAR,
};
use crate::table::Table;

/// Yearly rise of the high-productivity share while high-productivity
/// methods are the cheaper ones.
pub const PRODUCTIVITY_STEP: f64 = 0.01;

/// Absolute cost difference below which the two methods count as equal.
pub const HORIZON_TOLERANCE: f64 = 1e-9;

pub const HISTORY_COLUMNS: [&str; 8] = [
    "t",
    "nominal_min",
    "w_min",
    "w_mean",
    "labor_share",
    "price_level",
    "high_productivity_share",
    "gini_proxy",
];

const MAX_ITERATIONS: usize = 10_000;

/// A scenario being stepped forward, with its history. The first history
/// entry is the `t = 0` snapshot.
#[derive(Debug, Clone, PartialEq)]
pub struct Simulation {
    config: ScenarioConfig,
    state: EconomyState,
    history: Vec<StepRecord>,
}

impl Simulation {
    pub fn new(config: ScenarioConfig) -> Result<Self, SimError> {
        let errors = config.validate();
        if !errors.is_empty() {
            return Err(SimError::InvalidConfig(errors));
        }
        let state = config.initial.clone();
        let first = snapshot(&state, &config)?;
        Ok(Self {
            config,
            state,
            history: vec![first],
        })
    }

    /// Runs every configured step.
    pub fn run_to_end(config: ScenarioConfig) -> Result<Self, SimError> {
        let mut sim = Self::new(config)?;
        for _ in 0..sim.config.steps {
            sim.step()?;
        }
        Ok(sim)
    }

    pub fn config(&self) -> &ScenarioConfig {
        &self.config
    }

    pub fn state(&self) -> &EconomyState {
        &self.state
    }

    pub fn history(&self) -> &[StepRecord] {
        &self.history
    }

    pub fn latest(&self) -> &StepRecord {
        self.history.last().expect("history starts with a snapshot")
    }

    /// Index of the next step to be taken.
    pub fn next_step(&self) -> u32 {
        self.state.t + 1
    }

    /// Advances one year using the scenario's action for that step, if any.
    pub fn step(&mut self) -> Result<StepRecord, SimError> {
        let action = self.config.actions.get(&self.next_step()).copied();
        self.step_with(action)
    }

    /// Advances one year; `action` overrides the rule. State is untouched on
    /// failure.
    pub fn step_with(&mut self, action: Option<ManualAction>) -> Result<StepRecord, SimError> {
        let step = self.next_step();
        let (state, record) =
            advance(&self.state, &self.config, action).map_err(|source| SimError::Step { step, source })?;
        self.state = state;
        self.history.push(record);
        Ok(record)
    }
}

/// The configured number of steps, without the `t = 0` snapshot.
pub fn run(config: &ScenarioConfig) -> Result<Vec<StepRecord>, SimError> {
    let sim = Simulation::run_to_end(config.clone())?;
    Ok(sim.history[1..].to_vec())
}

/// History row describing `state` itself.
pub fn snapshot(state: &EconomyState, config: &ScenarioConfig) -> Result<StepRecord, ModelError> {
    let unit = state.hourly_unit();
    let nominal_min = state.dist.min_wage();
    let mean = mean_wage(&state.dist);
    Ok(StepRecord {
        t: state.t,
        nominal_min,
        w_min: Ratio::new(nominal_min / unit)?,
        w_mean: Ratio::new(mean / unit)?,
        labor_share: labor_share_of(mean, state.gdp_per_capita, state.hours_per_capita, config)?,
        price_level: state.price_level,
        high_productivity_share: state.high_productivity_share,
        gini_proxy: state.gini_proxy,
    })
}

fn labor_share_of(mean_hourly: f64, output_per_capita: f64, hours: f64, config: &ScenarioConfig) -> Result<Ratio, ModelError> {
    let w_mean = Ratio::new(mean_hourly * HOURS_PER_YEAR / output_per_capita)?;
    let t_mean = t_mean_from_wage(w_mean, &config.compensation)?;
    labor_share(t_mean.get() / HOURS_PER_YEAR, hours)
}

struct Decision {
    floor: f64,
    ratio: Option<f64>,
    explicit: bool,
}

fn decide(
    state: &EconomyState,
    config: &ScenarioConfig,
    action: Option<ManualAction>,
    next_gdppc: f64,
    next_price: f64,
) -> Result<Decision, StepError> {
    let next_unit = next_gdppc / HOURS_PER_YEAR;
    let explicit = |floor, ratio| Decision {
        floor,
        ratio,
        explicit: true,
    };
    Ok(match action {
        Some(ManualAction::Hold) => explicit(state.dist.min_wage(), None),
        Some(ManualAction::Floor(floor)) => explicit(floor, None),
        Some(ManualAction::Ratio(r)) => explicit(r * next_unit, Some(r)),
        None => match config.rule.ratio_floor(state) {
            Some(r) => Decision {
                floor: r * next_unit,
                ratio: Some(r),
                explicit: false,
            },
            None => Decision {
                floor: policy_floor(&config.rule, state, next_gdppc, next_price)?,
                ratio: None,
                explicit: false,
            },
        },
    })
}

fn advance(
    state: &EconomyState,
    config: &ScenarioConfig,
    action: Option<ManualAction>,
) -> Result<(EconomyState, StepRecord), StepError> {
    let t = state.t + 1;
    let growth = 1.0 + config.real_growth_rate;
    let next_gdppc = state.gdp_per_capita * growth * (1.0 + config.inflation_rate);
    let next_price = state.price_level * (1.0 + config.inflation_rate);
    let next_unit = next_gdppc / HOURS_PER_YEAR;
    let current_min = state.dist.min_wage();

    let decision = decide(state, config, action, next_gdppc, next_price)?;
    if decision.explicit && decision.floor < current_min {
        return Err(ModelError::FloorBelowMinimum {
            new_min: decision.floor,
            current_min,
        }
        .into());
    }

    let sagged = sag(&state.dist, state.gdp_per_capita, next_gdppc, &config.compression)?;
    let binding = decision.floor >= current_min;
    let dist = if decision.floor > current_min {
        compress(&sagged, decision.floor, &config.compression, next_gdppc)?
    } else {
        sagged.clone()
    };
    let nominal_min = dist.min_wage();
    let w_min = match (binding, decision.ratio) {
        (true, Some(r)) => r,
        _ => nominal_min / next_unit,
    };

    let mean_after = mean_wage(&dist);
    let delta_bill = (mean_after - mean_wage(&sagged)) * state.hours_per_capita;
    let passed_on = config.passthrough_alpha * delta_bill;
    let price_level = next_price * (1.0 + passed_on / next_gdppc);
    let labor = labor_share_of(mean_after, next_gdppc + passed_on, state.hours_per_capita, config)?;

    let elapsed = t - config.initial.t;
    let price_factor = price_level / config.initial.price_level;
    let base = &config.horizon;
    let low = TransformUnit::new(
        base.low.labor_hours_per_unit(),
        nominal_min,
        base.low.non_labor_cost_per_unit() * price_factor,
    )?;
    let high = TransformUnit::new(
        base.high.labor_hours_per_unit() / growth.powi(elapsed as i32),
        base.high.hourly_wage() * next_gdppc / config.initial.gdp_per_capita,
        base.high.non_labor_cost_per_unit() * price_factor,
    )?;
    let high_share = match horizon_side(&low, &high, HORIZON_TOLERANCE) {
        HorizonSide::HighCheaper => (state.high_productivity_share + PRODUCTIVITY_STEP).min(1.0),
        _ => state.high_productivity_share,
    };

    let gini_proxy = gini(&dist);
    let next = EconomyState {
        t,
        gdp_per_capita: next_gdppc,
        dist,
        hours_per_capita: state.hours_per_capita,
        price_level,
        high_productivity_share: high_share,
        gini_proxy,
    };
    let record = StepRecord {
        t,
        nominal_min,
        w_min: Ratio::new(w_min)?,
        w_mean: Ratio::new(mean_after / next_unit)?,
        labor_share: labor,
        price_level,
        high_productivity_share: high_share,
        gini_proxy,
    };
    Ok((next, record))
}

/// Stationary `w_mean` once the floor is pinned at `target` times hourly
/// per-capita GDP, starting from `dist0` at per-capita GDP `gdppc`.
///
/// A floor above the target first sags down to it; a floor below is raised by
/// compression. Compression at the pinned floor is then iterated until the
/// mean stops moving.
pub fn fixed_point_wmean(
    target: Ratio,
    compression: &CompressionParams,
    dist0: &WageDistribution,
    gdppc: f64,
) -> Result<Ratio, SimError> {
    let tau = target.get();
    if tau <= 0.0 {
        return Err(ModelError::NonPositive {
            what: "target",
            value: tau,
        }
        .into());
    }
    let start_ratio = dist0.min_wage() * HOURS_PER_YEAR / gdppc;
    let (mut dist, gdppc) = if tau < start_ratio {
        let lowered = gdppc * start_ratio / tau;
        (sag(dist0, gdppc, lowered, compression)?, lowered)
    } else {
        (dist0.clone(), gdppc)
    };
    let unit = gdppc / HOURS_PER_YEAR;
    let pinned = tau * unit;

    let mut previous = mean_wage(&dist) / unit;
    for _ in 0..MAX_ITERATIONS {
        let floor = pinned.max(dist.min_wage());
        dist = compress(&dist, floor, compression, gdppc)?;
        let current = mean_wage(&dist) / unit;
        if (current - previous).abs() <= 1e-15 * current.max(1.0) {
            return Ok(Ratio::new(current)?);
        }
        previous = current;
    }
    Err(SimError::NoConvergence(MAX_ITERATIONS))
}

/// History as a table with [`HISTORY_COLUMNS`].
pub fn history_table(records: &[StepRecord]) -> Table {
    let mut table = Table::new(HISTORY_COLUMNS);
    for r in records {
        table.push(r.values().iter().map(|&v| Some(v)).collect());
    }
    table
}
