//! Operator tooling: command implementations, bot policies and the
//! simulation harness behind the `fakeyou` binary.

pub mod args;
pub mod bots;
pub mod commands;
pub mod simulate;
pub mod synthetic;

mod error;

pub use bots::{BotPolicy, FakeStyle};
pub use error::CliError;
pub use simulate::{simulate, simulation_engine, SimulationConfig, SimulationReport};
pub use synthetic::synthetic_articles;
