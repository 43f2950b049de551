//! File formats, caching, reports and the command-line front end for
//! `leelp-core`.

pub mod cache;
pub mod cli;
pub mod dump;
pub mod error;
pub mod format;
pub mod report;
pub mod search;
pub mod table;
pub mod verify;

pub use error::{CliError, CliResult};
