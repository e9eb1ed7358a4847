//! Ingestion, orchestration and reporting behind the `defring` binary.

pub mod bounds;
pub mod error;
pub mod fibre;
pub mod ingest;
pub mod report;
pub mod selftest;

pub use error::{CliError, CliResult};
