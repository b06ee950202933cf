//! JSON document formats, reports, SVG plots and the command-line front end
//! for `tropmap-core`.
//!
//! Reports and documents go to stdout as canonical JSON; one-line human
//! summaries go to stderr. Exit codes: 0 success, 1 predicate false (the
//! report is still emitted), 2 input error.

pub mod cli;
pub mod doc;
pub mod plot;

pub use cli::{run, Env, Outcome, ProcessEnv, EXIT_FALSE, EXIT_INPUT, EXIT_OK};
pub use doc::{parse_document, render, Document, FanChoice, Issue, Kind, Loaded, MapDoc};
