//! Command-line front end for the seesaw lever toolkit.
//!
//! The binary parses an INI-style run configuration, drives the closed-form
//! and frame-oracle solvers from `seesaw-core`, and renders plain-text
//! reports and deterministic CSV files. Everything the binary does is also
//! reachable through this library so tests can call commands directly.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;

pub use args::Cli;
pub use config::{parse_config, to_ini_string, ConfigError, Parsed, RunConfig, ScrewConfig, SearchConfig};
pub use error::CliError;
