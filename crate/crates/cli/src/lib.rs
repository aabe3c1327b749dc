//! Command-line driver for `flatcert-core`: algebra inspection, unit
//! enumeration, configuration files, certification runs and SVG rendering.
//!
//! Every command is a plain function returning an [`Outcome`], so the binary
//! in `main.rs` only parses flags and prints.

pub mod args;
pub mod commands;
pub mod error;
pub mod format;
pub mod report;
pub mod svg;

pub use args::{AlgebraArgs, CertifyArgs, Cli, Command, ConfigArgs, UnitsArgs};
pub use commands::{run, Outcome};
pub use error::CliError;
pub use report::RunReport;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const FAILURE: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const INCONCLUSIVE: u8 = 3;
    pub const NOT_FOUND: u8 = 4;
}
