//! Command implementations, file formats, corpus generators, and report
//! schema behind the `polarbetti` binary. Everything here is a pure
//! function of its inputs so the commands can be driven both from `main`
//! and from the test suites.

pub mod commands;
pub mod corpus;
pub mod expr;
pub mod report;

pub use commands::{cmd_betti, cmd_engine, cmd_gen, cmd_polar, cmd_verify, CliError, EngineInput, Method, Options};
pub use report::{OutputFormat, RunReport};
