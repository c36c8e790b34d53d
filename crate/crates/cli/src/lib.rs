//! Command-line companion to [`ipdt_core`]: scenario files, the benchmark
//! comparison and sweep harness, trace/report serialization, and the `ipdt`
//! binary's argument handling.
//!
//! The core crate stays `no_std`-compatible and side-effect free; everything
//! that touches the filesystem, environment, terminal, or threads lives
//! here.

#![forbid(unsafe_code)]
#![warn(missing_docs)]

pub mod cli;
pub mod error;
pub mod output;
pub mod run;
pub mod scenario;
pub mod trace_io;
