//! Command-line driver for `dgpp-core`: configuration, quiver input,
//! JSON and DOT output, and the acceptance check suite.

pub mod checks;
pub mod cli;
pub mod config;
pub mod dot;
pub mod quiver_io;
pub mod report;
pub mod serialize;

pub use checks::{run_check_suite, SuiteReport};
pub use cli::{execute, Cli, Output};
pub use config::{ConfigError, RunConfig};
pub use dot::export_dot;
pub use quiver_io::{parse_quiver, ParseError};
pub use report::{Report, Status};
