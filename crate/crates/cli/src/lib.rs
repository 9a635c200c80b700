//! Command-line interface for the Chen-Ruan cohomology ring.
//!
//! - [`expr`]: parser and canonical printer for class expressions;
//! - [`table`]: JSON structure-constant tables;
//! - [`commands`]: subcommands and the exit-code contract;
//! - [`error`]: the shared error type.

pub mod commands;
pub mod error;
pub mod expr;
pub mod table;
