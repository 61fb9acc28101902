//! Library surface of the opal command-line tool: file formats and the
//! command implementations, exposed for integration testing.

pub mod commands;
pub mod formats;

pub use commands::{run, Cli};
