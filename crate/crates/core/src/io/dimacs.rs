use super::{content_lines, parse_id, ParseError};
use crate::graph::{Graph, GraphError};

/// Parses the DIMACS edge format: `c` comments, one `p edge <n> <m>` line,
/// then `e <u> <v>` lines with 1-based ids. The declared edge count is not
/// enforced since many published instances list each edge twice.
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (line, content) in content_lines(text, 'c') {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            ["p", _format, count, _m] => {
                if n.is_some() {
                    return Err(ParseError::malformed(line, "second problem line"));
                }
                n = Some(parse_id(count, line)?);
            }
            ["e", u, v] => {
                let Some(n) = n else {
                    return Err(ParseError::malformed(line, "edge precedes problem line"));
                };
                let (u, v) = (parse_id(u, line)?, parse_id(v, line)?);
                for id in [u, v] {
                    if id == 0 || id > n {
                        return Err(ParseError::Graph {
                            line,
                            source: GraphError::OutOfRange {
                                id,
                                vertex_count: n,
                            },
                        });
                    }
                }
                if u == v {
                    return Err(ParseError::Graph {
                        line,
                        source: GraphError::SelfLoop(u - 1),
                    });
                }
                edges.push((u - 1, v - 1));
            }
            _ => return Err(ParseError::malformed(line, "unrecognized DIMACS line")),
        }
    }
    let n = n.ok_or(ParseError::MissingProblemLine)?;
    Graph::new(n, &edges).map_err(|source| ParseError::Graph { line: 0, source })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let g = parse_dimacs("c tiny\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn isolated_vertices() {
        assert_eq!(parse_dimacs("p edge 2 0").unwrap(), Graph::edgeless(2));
    }

    #[test]
    fn duplicates_collapse() {
        let g = parse_dimacs("p edge 2 2\ne 1 2\ne 2 1").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_dimacs("e 1 2\np edge 2 1"),
            Err(ParseError::Malformed { line: 1, .. })
        ));
        assert_eq!(
            parse_dimacs("c nothing"),
            Err(ParseError::MissingProblemLine)
        );
        assert!(matches!(
            parse_dimacs("p edge 2 1\ne 0 1"),
            Err(ParseError::Graph { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 2 1\ne 1 3"),
            Err(ParseError::Graph { line: 2, .. })
        ));
    }
}
