//! File formats, reports and the `spanners` command-line driver for
//! `spanner-core`.

pub mod cli;
pub mod error;
pub mod io;
pub mod report;
pub mod source;

pub use error::{ToolError, ToolResult};
