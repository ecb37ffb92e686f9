//! Threads, files and the command line on top of [`gapkit_core`].

pub mod cli;
pub mod driver;
pub mod io;

pub use gapkit_core as core;
