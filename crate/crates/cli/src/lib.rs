//! Command-line front end for the sideband model: configuration files,
//! sweeps to CSV, witness tables and SVG plots.

pub mod commands;
pub mod config;
pub mod error;
pub mod plot;
pub mod table;

pub use config::RunConfig;
pub use error::CliError;
