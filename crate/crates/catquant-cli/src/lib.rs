//! Library surface of the `catquant` command-line tool: JSON document
//! formats and the command implementations, kept callable for integration
//! tests.

pub mod commands;
pub mod doc;
