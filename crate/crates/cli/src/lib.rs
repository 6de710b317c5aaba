//! Command-line front end: argument parsing, dispatch and reports.

pub mod commands;
pub mod report;

pub use commands::{run, Cli, CliError, Output};
