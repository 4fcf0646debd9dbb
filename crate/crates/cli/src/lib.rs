//! Command-line front end: ideal parsing, report assembly and the registry
//! of worked instances checked by `verify-paper`.

pub mod commands;
pub mod parser;
pub mod report;
pub mod scenarios;
