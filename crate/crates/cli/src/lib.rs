//! Batch front end for `cubelab-core`: instance files in, result records out.
pub mod commands;
pub mod io;
pub mod selftest;

pub use commands::{run, Options, COMMANDS};
pub use io::{parse_instance, Failure, InstanceFile, Record};
