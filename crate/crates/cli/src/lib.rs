//! Command-line front end for the mean payoff game toolkit: file formats,
//! subcommand plumbing, and the benchmark harness.

pub mod bench;
pub mod format;
