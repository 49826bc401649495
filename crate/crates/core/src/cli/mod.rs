//! Scenario ingestion, command dispatch and report emission.

pub mod report;
pub mod run;
pub mod scenario;

pub use report::{CriteriaMatrix, Report, SCHEMA_VERSION};
pub use run::{run, Command, RunError, RunOptions, INVALID_INPUT};
pub use scenario::{parse_scenario, Scenario, ScenarioError, ScenarioErrors, ScenarioFile};
