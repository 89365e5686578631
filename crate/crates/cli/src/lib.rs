//! Library side of the `hewalk` command-line tool: argument parsing
//! helpers, CSV emission, and the subcommand implementations.

pub mod angle;
pub mod commands;
pub mod config;
pub mod csv;
