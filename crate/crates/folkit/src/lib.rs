//! File formats, the command-line front end and the acceptance checks for
//! `folkit-core`.

pub mod cli;
pub mod formats;
pub mod selftest;
