//! JSON documents and command dispatch behind the `tropvar` binary.

pub mod document;
pub mod error;
pub mod off;
pub mod report;
pub mod run;

pub use document::{parse_complex, parse_system, serialize_system};
pub use error::{CliError, Result};
pub use run::{run, Cli, Format};
