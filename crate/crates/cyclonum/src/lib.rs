//! Command-line front end for `cyclonum-core`.
//!
//! Subcommands: `compute` (one cell), `table` (all cells as CSV or JSON),
//! `export-matrix` (the rank matrix `C` or the digraph adjacency `A`) and
//! `verify` (the cross-method sweep).

pub mod commands;
pub mod config;
pub mod record;
pub mod sweep;

pub use commands::{run, Cli};
pub use config::{parse_config, ConfigError};
