//! Workspace files and the command line for `boundquiver-core`.

pub mod cli;
pub mod format;

pub use format::{parse, serialize, ParseError, Workspace};
