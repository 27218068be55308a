//! Library side of the `cluster-rsp` command-line tool: single-point reports,
//! figure presets and grid sweeps, and the number formatting they share.

mod error;
pub mod format;
pub mod report;
pub mod sweep;

pub use error::CliError;
