//! Command line front end, wire format and acceptance runner for
//! `rsurf-core`.

pub mod acceptance;
pub mod cli;
pub mod json;
