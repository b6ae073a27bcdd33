//! Command-line front end for `hnrank`.

pub mod commands;
pub mod dot;
pub mod error;
pub mod subgroup;
pub mod syntax;

pub use commands::{run, Cli, Command, Output};
pub use error::CliError;
