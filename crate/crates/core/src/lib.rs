//! Minimum and mean wages measured as portions of per-capita GDP.
//!
//! The crate is split in three layers:
//!
//! * [`model`]: ratio measures, the labor-share identity, transform-unit
//!   costs and the wage-compression kernel.
//! * [`indicators`]: CSV ingestion of annual series and the empirical
//!   measures computed from them (ratios, real wages, Kaitz comparisons,
//!   scatter and Gini statistics, figure tables).
//! * [`simulator`]: a deterministic annual stepping engine that evolves a
//!   binned wage distribution under a minimum-wage indexing rule.

pub mod fixtures;
pub mod indicators;
pub mod model;
pub mod simulator;
pub mod table;

pub use model::{
    CompensationBreakdown, CompressionParams, HorizonSide, Kernel, LaborShareAccount, ModelError,
    Ratio, TransformUnit, WageBin, WageDistribution, HOURS_PER_YEAR,
};
pub use simulator::{EconomyState, ManualAction, PolicyRule, ScenarioConfig, SimError, StepRecord};
pub use table::Table;
