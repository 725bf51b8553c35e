//! Command-line front end: spec ingestion, suite orchestration and report
//! emission.

pub mod cli;
pub mod error;
pub mod gallery;
pub mod output;
pub mod spec;
pub mod suite;

pub use error::CliError;
pub use output::{emit_report, Format};
pub use spec::{load_spec, parse_spec, RawSpec, SpecBuilder, SpecDocument};
pub use suite::run_suite;
