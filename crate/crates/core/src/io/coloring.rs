use super::{content_lines, parse_id, ParseError};
use crate::refine::Coloring;
use std::fmt::Write;

/// Parses `v c` lines assigning color label `c` to vertex `v`. Every vertex
/// in `0..vertex_count` must be assigned exactly once. Labels are compacted
/// onto `0..K` in increasing label order.
pub fn parse_coloring(text: &str, vertex_count: usize) -> Result<Coloring, ParseError> {
    let mut labels: Vec<Option<usize>> = vec![None; vertex_count];
    for (line, content) in content_lines(text, '#') {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let [v, c] = tokens.as_slice() else {
            return Err(ParseError::malformed(line, "expected \"vertex color\""));
        };
        let (v, c) = (parse_id(v, line)?, parse_id(c, line)?);
        let slot = labels.get_mut(v).ok_or_else(|| {
            ParseError::malformed(line, format!("vertex {v} out of range 0..{vertex_count}"))
        })?;
        if slot.is_some() {
            return Err(ParseError::malformed(
                line,
                format!("vertex {v} assigned twice"),
            ));
        }
        *slot = Some(c);
    }
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or(ParseError::MissingVertex(v)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Coloring::compact(&labels))
}

/// Writes one `v c` line per vertex.
pub fn emit_coloring(c: &Coloring) -> String {
    let mut out = String::new();
    for (v, color) in c.colors().iter().enumerate() {
        writeln!(out, "{v} {color}").unwrap();
    }
    out
}

/// Largest vertex id mentioned in a coloring file plus one, for callers that
/// have no graph to take the vertex count from.
pub fn coloring_vertex_count(text: &str) -> Result<usize, ParseError> {
    let mut count = 0;
    for (line, content) in content_lines(text, '#') {
        let first = content.split_whitespace().next().unwrap_or_default();
        count = count.max(parse_id(first, line)? + 1);
    }
    Ok(count)
}
