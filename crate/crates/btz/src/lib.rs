//! Command-line front end and verification suites for the BTZ causal model.

pub mod cli;
pub mod verify;
