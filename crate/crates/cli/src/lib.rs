//! Command-line front end for `comma-core`, with an OEIS b-file client for
//! checking generated sequences against published data.

pub mod args;
pub mod commands;
pub mod generators;
pub mod oeis;
pub mod output;

pub use args::Cli;
pub use commands::{default_cache_dir, execute, CliError};
