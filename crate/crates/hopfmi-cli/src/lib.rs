//! Parsing, rendering, and cache persistence for the hopfmi command line.

pub mod cache;
pub mod error;
pub mod output;
pub mod parse;

pub use error::CliError;
