//! File formats, parallel drivers and the `nonarch-lab` command line over
//! [`nonarch_core`].
//!
//! Reports are deterministic: they carry no timestamps or timings, maps are
//! key-sorted, and parallel work is merged in a fixed order, so a rerun with
//! the same configuration reproduces the same bytes.

pub mod cli;
pub mod commands;
pub mod corpus;
pub mod error;
pub mod format;
pub mod parallel;
pub mod report;

pub use commands::{dispatch, Outcome};
pub use error::{exit, LabError, LabResult};
pub use report::{Report, RunConfig};
