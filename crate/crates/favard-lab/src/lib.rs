//! Operational shell around `favard-core`: scene and config file formats,
//! the versioned JSON report, CSV emission, a deterministic thread pool,
//! and the command runners behind the `favard-lab` binary.
//!
//! Reports are byte-identical for a fixed `(scene, config, seed)` at any
//! thread count: parallel work is split by index, combined in index order,
//! and nothing scheduling-dependent (thread counts, timestamps, absolute
//! paths) is ever embedded in an output file.

pub mod csvout;
pub mod parallel;
pub mod report;
pub mod runner;
pub mod scene;

pub use report::Report;
pub use scene::{ConfigOverrides, Scene};
