//! Text formats: graph ingestion, coloring files, trace documents, and DOT
//! rendering.

mod coloring;
mod dimacs;
mod dot;
mod edge_list;
mod trace;

pub use coloring::{coloring_vertex_count, emit_coloring, parse_coloring};
pub use dimacs::parse_dimacs;
pub use dot::{emit_dot, fill_color};
pub use edge_list::{emit_edge_list, parse_edge_list};
pub use trace::{emit_trace, parse_trace, EdgeColor, TraceDocument};

use crate::graph::GraphError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    /// `line` is 1-based.
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("no problem line found")]
    MissingProblemLine,
    #[error("vertex {0} has no color assigned")]
    MissingVertex(usize),
    #[error("invalid trace document: {0}")]
    Trace(String),
}

impl ParseError {
    fn malformed(line: usize, message: impl Into<String>) -> Self {
        ParseError::Malformed {
            line,
            message: message.into(),
        }
    }
}

/// Lines with their 1-based numbers, skipping blanks and those whose first
/// non-space character is `comment`.
fn content_lines(text: &str, comment: char) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(move |(_, l)| !l.is_empty() && !l.starts_with(comment))
}

fn parse_id(token: &str, line: usize) -> Result<usize, ParseError> {
    token
        .parse::<usize>()
        .map_err(|e| ParseError::malformed(line, format!("bad integer {token:?}: {e}")))
}
