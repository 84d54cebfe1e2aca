//! Scenario files, grid evaluation, CSV output and verification suites for
//! the `epd` command.

pub mod commands;
pub mod config;
pub mod grid;
pub mod verify;
