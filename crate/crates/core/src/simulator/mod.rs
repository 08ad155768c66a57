//! Deterministic annual stepping engine for minimum-wage indexing policies.

mod config;
mod engine;
mod policy;
pub mod presets;
mod state;

pub use config::{FieldError, Horizon, ScenarioConfig};
pub use engine::{
    fixed_point_wmean, history_table, run, snapshot, Simulation, HISTORY_COLUMNS, HORIZON_TOLERANCE,
    PRODUCTIVITY_STEP,
};
pub use policy::{policy_floor, ManualAction, PolicyRule};
pub use state::{EconomyState, StepRecord};

use thiserror::Error;

use crate::model::ModelError;

/// Failure of a single step.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum StepError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("manual rule has no floor for this step")]
    MissingManualFloor,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid scenario: {}", join(.0))]
    InvalidConfig(Vec<FieldError>),
    #[error("step {step}: {source}")]
    Step {
        step: u32,
        #[source]
        source: StepError,
    },
    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl SimError {
    /// Step index of a failing step, if the error came from one.
    pub fn step(&self) -> Option<u32> {
        match self {
            SimError::Step { step, .. } => Some(*step),
            _ => None,
        }
    }
}

fn join(errors: &[FieldError]) -> String {
    errors.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
