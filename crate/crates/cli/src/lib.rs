//! Definition files, reports and the `quasialg` command line.

pub mod commands;
pub mod dsl;
pub mod report;
pub mod resolve;

pub use commands::run;
