//! Command-line workbench: configuration files, the catalog cache, JSON
//! reports and the `workbench` commands.

pub mod app;
pub mod cache;
pub mod commands;
pub mod config;
pub mod report;

pub use app::{run, run_with};

/// Bundled configuration for the first worked example (right pairs).
pub const EXAMPLE_A: &str = include_str!("../configs/example-a.toml");
/// Bundled configuration for the second worked example (left pairs).
pub const EXAMPLE_B: &str = include_str!("../configs/example-b.toml");
