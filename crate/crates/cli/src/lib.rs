//! Scenario runner for the velfield residual suites.
//!
//! A scenario builds fixtures and potentials, evaluates its checks over a
//! sample cloud and produces a [`ResidualReport`]. The `velfield` binary is a
//! thin wrapper around [`app::main_with_args`].

pub mod app;
pub mod config;
pub mod error;
pub mod report;
pub mod sampling;
pub mod scenarios;

pub use config::{Format, Overrides, Scenario, ScenarioConfig, Settings};
pub use error::CliError;
pub use report::ResidualReport;
pub use scenarios::run_scenario;

/// Scenario names, sorted.
pub fn list_scenarios() -> Vec<&'static str> {
    Scenario::ALL.iter().map(|s| s.name()).collect()
}
