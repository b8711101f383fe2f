//! Command line front end: input formats, subcommands and reports.

pub mod commands;
pub mod input;
pub mod report;

pub use commands::{execute, run_main, Cli, Command, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_OK, EXIT_RESOURCE};
pub use input::{parse_input, parse_str, Format, InputError, ParseError};
pub use report::{emit_report, Body, Report, SuiteRun};
