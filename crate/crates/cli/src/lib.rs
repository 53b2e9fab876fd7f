//! Command implementations and the dataset/sweep harness behind the `nlts` binary.

pub mod commands;
pub mod dataset;
pub mod error;
pub mod sweep;
pub mod verify;

pub use error::{CliError, Result};
