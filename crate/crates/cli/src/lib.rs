//! File formats, scan drivers and the command-line interface for `etalink`.

pub mod commands;
pub mod examples;
pub mod fixtures;
pub mod formats;
pub mod report;
pub mod scan;

pub use commands::run;
