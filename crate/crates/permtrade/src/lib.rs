//! IO, caching and the command-line front end for `permtrade-core`.
//!
//! * [`formats`]: text formats for posets, set systems, covers, TSP matrices
//!   and DFAS graphs.
//! * [`builtin`]: named instances.
//! * [`cache`]: memoised exact counts.
//! * [`verify`]: reproductions of the reference constants.
//! * [`cli`]: argument parsing; the `permtrade` binary is a thin wrapper.

pub mod builtin;
pub mod cache;
pub mod cli;
pub mod formats;
pub mod verify;

pub use permtrade_core as core;
