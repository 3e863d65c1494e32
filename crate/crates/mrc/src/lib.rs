//! File formats, the experiment runner and the command-line interface for
//! minimax risk classifiers built on `mrc-core`.
//!
//! Labels in every file are `1..=K`; they are shifted to 0-based indices when
//! handed to the core crate.

pub mod commands;
pub mod error;
pub mod experiment;
pub mod format;
pub mod io;
pub mod pipeline;
pub mod policy;
pub mod synth;
