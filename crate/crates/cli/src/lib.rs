//! Command-line front end for `spinoptics`.
//!
//! Optical chains are written in a small mini-language (see [`chain`]) and
//! fed to one of five subcommands; results are emitted as a JSON envelope or,
//! for tabular commands, CSV.

pub mod args;
pub mod chain;
pub mod commands;
pub mod error;
pub mod output;

pub use args::Cli;
pub use chain::{parse_chain, ChainError, ChainSpec, Element};
pub use commands::run;
pub use error::CliError;
