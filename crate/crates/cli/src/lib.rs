//! Presentation-file parsing, command dispatch, corpus runner and reporting.

pub mod ops;
pub mod presfile;
pub mod report;
pub mod runner;
