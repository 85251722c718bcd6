use super::{content_lines, parse_id, ParseError};
use crate::graph::{Graph, GraphError};
use std::fmt::Write;

/// Parses `u v` lines. `#` lines and blank lines are ignored. An optional
/// `n <count>` header fixes the vertex count; otherwise it is one more than
/// the largest id seen.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for (line, content) in content_lines(text, '#') {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            ["n", count] => {
                if declared.is_some() || !edges.is_empty() {
                    return Err(ParseError::malformed(line, "header must come first"));
                }
                declared = Some(parse_id(count, line)?);
            }
            [u, v] => {
                let (u, v) = (parse_id(u, line)?, parse_id(v, line)?);
                if u == v {
                    return Err(ParseError::Graph {
                        line,
                        source: GraphError::SelfLoop(u),
                    });
                }
                edges.push((u, v, line));
            }
            _ => {
                return Err(ParseError::malformed(
                    line,
                    "expected \"u v\" or \"n <count>\"",
                ))
            }
        }
    }
    let n = match declared {
        Some(n) => n,
        None => match edges.iter().map(|&(u, v, _)| u.max(v)).max() {
            Some(max) => max
                .checked_add(1)
                .ok_or_else(|| ParseError::malformed(0, "vertex id overflow"))?,
            None => 0,
        },
    };
    if let Some(&(u, v, line)) = edges.iter().find(|&&(u, v, _)| u >= n || v >= n) {
        return Err(ParseError::Graph {
            line,
            source: GraphError::OutOfRange {
                id: u.max(v),
                vertex_count: n,
            },
        });
    }
    let pairs: Vec<_> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
    Graph::new(n, &pairs).map_err(|source| ParseError::Graph { line: 0, source })
}

/// Writes an `n <count>` header followed by one `u v` line per edge.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
