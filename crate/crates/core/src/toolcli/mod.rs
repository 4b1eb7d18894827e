//! Text formats, the command surface and the bundled fixtures.

mod commands;
mod corpus;
mod formats;
mod report;
mod text;

pub use commands::{resolve, run_command, Command, Manifest, Outcome, BUDGET_RANGE, GRID_RANGE, PARAM_KEYS};
pub use corpus::{corpus_dir, corpus_files, write_corpus};
pub use formats::{emit, parse_input, parse_kind, FormSpec, Input, Kind, LatticeFile, TangleFile};
pub use report::{exit_code, Report, EXIT_BUDGET, EXIT_HOLDS, EXIT_INPUT, EXIT_VIOLATED};
pub use text::{parse_document, Document, Reader};

use thiserror::Error;

/// A malformed input file. `line` is 1-based; 0 means the whole file.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{}{message}", if *.line > 0 { format!("line {}: ", .line) } else { String::new() })]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}
