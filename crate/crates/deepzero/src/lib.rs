//! IO, file formats, and command orchestration for the deep-zero numerics
//! in [`deepzero_core`]. The binary target wires these to a clap front end;
//! everything here is callable (and tested) as a library.

pub mod commands;
pub mod config;
pub mod format;
pub mod verify;

pub use config::{CommandKind, OutputFormat, PadSpec, ParityArg, RunConfig};
