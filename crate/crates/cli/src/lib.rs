//! Command-line front end and benchmark harness for `omega-core`.

pub mod bench;
pub mod cli;
pub mod generate;
pub mod render;

pub use cli::run;
