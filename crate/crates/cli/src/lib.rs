//! Library side of the `goldilocks` command-line tool: flag definitions,
//! the subcommand implementations, and table rendering.

pub mod args;
pub mod commands;
pub mod output;

pub use args::{Cli, Command, Format};
pub use commands::{run, CliError, Outcome};
