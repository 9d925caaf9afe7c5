//! File formats, report documents and subcommands of the `apartments` tool.

pub mod commands;
pub mod format;
pub mod report;

pub use commands::{CliError, Outcome};
pub use format::{FixtureFile, FormatError, SubspaceFile};
pub use report::Report;
