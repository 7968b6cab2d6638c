//! Command-line front end for the Zassenhaus and BCH series engine.

pub mod cache;
pub mod commands;
mod error;
pub mod format;

pub use error::CliError;
