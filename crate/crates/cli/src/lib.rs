//! Check suites behind the `verify` binary.

pub mod suites;

pub use suites::{run_command, Command, Settings, SuiteError};
