//! File format, reports and command drivers for the `stratakit` binary.

pub mod corpus;
pub mod format;
pub mod report;
pub mod run;
