//! JSON documents, commands and the randomized verification harness behind
//! the `multiphase` binary.

pub mod commands;
pub mod doc;
pub mod error;
pub mod polyparse;
pub mod report;
pub mod suites;

pub use error::{CliError, CliResult};
