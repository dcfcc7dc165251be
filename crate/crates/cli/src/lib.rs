//! Monte Carlo harness, CSV formats and presets for the `monotone-index` CLI.

pub mod error;
pub mod format;
pub mod input;
pub mod presets;
pub mod simulation;

pub use error::CliError;
