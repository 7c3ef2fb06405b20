//! Command-line front end: argument parsing, reproducible instances and
//! JSONL/TSV report writers.

pub mod args;
pub mod commands;
pub mod error;
pub mod instance;
pub mod records;

pub use args::{Cli, Command, Format, IntRange};
pub use commands::{run, THREADS_VAR};
pub use error::CliError;
