//! Text and DOT formats, reports, benchmark suites and the command-line
//! front end for `actorgc-core`.

pub mod bench;
pub mod cli;
pub mod dot;
pub mod format;
pub mod report;
