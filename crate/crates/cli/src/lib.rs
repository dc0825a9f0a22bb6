//! Fixture files: parsing, execution and JSON reports.

pub mod fixture;
pub mod run;
pub mod syntax;
