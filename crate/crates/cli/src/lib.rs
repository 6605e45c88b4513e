//! File formats and subcommand implementations behind the `possfca` binary.

pub mod commands;
pub mod io;
