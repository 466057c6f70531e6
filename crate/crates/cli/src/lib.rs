//! Command-line front end: ring reports, the lattice cache and the claim
//! manifest harness.

pub mod cache;
pub mod cli;
pub mod engine;
pub mod manifest;
pub mod report;

pub use cli::run;
