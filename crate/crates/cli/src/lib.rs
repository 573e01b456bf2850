//! Specification language, report model and theorem-verification suites
//! for `ringlab`.

pub mod catalog;
pub mod commands;
pub mod dsl;
pub mod error;
pub mod eval;
pub mod report;
pub mod suites;

pub use commands::{run_command, Command, Outcome, RunOptions};
pub use dsl::{parse_spec, SpecDocument};
pub use error::CliError;
pub use report::{emit_report, Format, Report};
