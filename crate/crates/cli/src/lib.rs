//! Experiment harness: configuration, set specifiers, point-set files,
//! check suites, and deterministic reports.

pub mod config;
pub mod io;
pub mod report;
pub mod specifier;
pub mod suite;

pub use config::{Caps, ExperimentConfig, ModeChoice, SoftConstants};
pub use report::{CheckRecord, Report, Status};
pub use suite::{run_suite, SuiteName};
