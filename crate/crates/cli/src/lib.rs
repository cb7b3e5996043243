//! Command-line front end for `smithalg`.

pub mod catalog;
pub mod commands;
pub mod error;
pub mod json;
pub mod parse;
pub mod verify;

pub use commands::{run, Cli, Format, Report};
pub use error::CliError;
