// SPDX-License-Identifier: MIT OR Apache-2.0

//! File formats, reports, benchmarks and the command-line front end for
//! [`hmmseg_core`].

#![forbid(unsafe_code)]

pub mod bench;
pub mod cli;
mod error;
pub mod ingest;
pub mod report;
pub mod svg;

pub use error::{CliError, ExitCode};
