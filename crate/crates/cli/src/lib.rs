//! Driver for the `arrhodge` binary: report assembly, the invariant suite
//! and the golden reports for the shipped arrangements.

pub mod checks;
pub mod commands;
pub mod golden;
pub mod report;

pub use commands::{cmd_analyze, cmd_check, cmd_formulas, CheckSummary, CliError, Input};
pub use report::{CheckResult, RunReport};
