//! Command-line front end for the `p1z` library.
//!
//! Every subcommand prints exact values alongside their numeric
//! evaluation (never numerics alone), as a human-readable table by
//! default or as JSON with `--json`. The `verify` subcommand runs the
//! full cross-validation suite and reports one pass/fail line per check.

pub mod app;
pub mod json;
pub mod verify;

pub use app::run;
