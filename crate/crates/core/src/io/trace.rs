use super::ParseError;
use crate::analysis::partition_of;
use crate::graph::{ExpandedGraph, Graph};
use crate::refine::RefinementTrace;
use serde::{Deserialize, Deserializer, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write;

const NOT_CONVERGED: &str = "not converged";

/// Final color of a virtual edge-vertex, keyed by the original endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeColor {
    pub u: usize,
    pub v: usize,
    pub color: usize,
}

/// Serialized form of a refinement run. The text form is JSON with a fixed
/// field order and one field per line, so equal documents are byte-equal.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceDocument {
    pub n: usize,
    pub m: usize,
    /// Options the run was made with, echoed for reproduction.
    pub run: BTreeMap<String, String>,
    pub initial: Vec<usize>,
    pub palette_sizes: Vec<usize>,
    pub colorings: Vec<Vec<usize>>,
    #[serde(deserialize_with = "converged_marker")]
    pub converged_at: Option<usize>,
    pub final_partition: Vec<Vec<usize>>,
    /// Present only for runs on an edge-expanded graph.
    pub edge_colors: Vec<EdgeColor>,
}

fn converged_marker<'de, D: Deserializer<'de>>(d: D) -> Result<Option<usize>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Marker {
        Step(usize),
        Text(String),
    }
    match Marker::deserialize(d)? {
        Marker::Step(t) => Ok(Some(t)),
        Marker::Text(s) if s == NOT_CONVERGED => Ok(None),
        Marker::Text(s) => Err(serde::de::Error::custom(format!(
            "converged_at must be a step or {NOT_CONVERGED:?}, got {s:?}"
        ))),
    }
}

impl TraceDocument {
    pub fn new(trace: &RefinementTrace, g: &Graph) -> Self {
        TraceDocument {
            n: g.vertex_count(),
            m: g.edge_count(),
            run: BTreeMap::new(),
            initial: trace.initial().colors().to_vec(),
            palette_sizes: trace.palette_sizes.clone(),
            colorings: trace
                .colorings
                .iter()
                .map(|c| c.colors().to_vec())
                .collect(),
            converged_at: trace.converged_at,
            final_partition: partition_of(trace.final_coloring()).classes,
            edge_colors: Vec::new(),
        }
    }

    /// Records the final colors of the virtual vertices of `expanded`,
    /// which must be the graph `trace` was run on.
    pub fn with_edge_colors(mut self, trace: &RefinementTrace, expanded: &ExpandedGraph) -> Self {
        let last = trace.final_coloring();
        self.edge_colors = expanded
            .virtual_vertices()
            .map(|(w, (u, v))| EdgeColor {
                u,
                v,
                color: last.color(w),
            })
            .collect();
        self
    }

    pub fn with_run(mut self, run: BTreeMap<String, String>) -> Self {
        self.run = run;
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("{\n");
        writeln!(out, "  \"n\": {},", self.n).unwrap();
        writeln!(out, "  \"m\": {},", self.m).unwrap();
        writeln!(out, "  \"run\": {},", json(&self.run)).unwrap();
        writeln!(out, "  \"initial\": {},", json(&self.initial)).unwrap();
        writeln!(out, "  \"palette_sizes\": {},", json(&self.palette_sizes)).unwrap();
        out.push_str(&nested_list("colorings", &self.colorings));
        match self.converged_at {
            Some(t) => writeln!(out, "  \"converged_at\": {t},").unwrap(),
            None => writeln!(out, "  \"converged_at\": \"{NOT_CONVERGED}\",").unwrap(),
        }
        out.push_str(&nested_list("final_partition", &self.final_partition));
        writeln!(out, "  \"edge_colors\": {}", json(&self.edge_colors)).unwrap();
        out.push_str("}\n");
        out
    }
}

fn nested_list(key: &str, rows: &[Vec<usize>]) -> String {
    if rows.is_empty() {
        return format!("  \"{key}\": [],\n");
    }
    let body: Vec<String> = rows.iter().map(|r| format!("    {}", json(r))).collect();
    format!("  \"{key}\": [\n{}\n  ],\n", body.join(",\n"))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

pub fn emit_trace(trace: &RefinementTrace, g: &Graph) -> String {
    TraceDocument::new(trace, g).to_text()
}

pub fn parse_trace(text: &str) -> Result<TraceDocument, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError::Trace(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refine::{refine, refine_to_fixpoint, zero_coloring};

    #[test]
    fn triangle_document() {
        let g = Graph::complete(3);
        let text = emit_trace(&refine(&g), &g);
        let doc = parse_trace(&text).unwrap();
        assert_eq!(doc.palette_sizes, vec![1, 1]);
        assert_eq!(doc.converged_at, Some(1));
        assert_eq!(doc.final_partition, vec![vec![0, 1, 2]]);
        assert_eq!(
            text,
            "{\n  \"n\": 3,\n  \"m\": 3,\n  \"run\": {},\n  \"initial\": [0,0,0],\n  \"palette_sizes\": [1,1],\n  \"colorings\": [\n    [0,0,0],\n    [0,0,0]\n  ],\n  \"converged_at\": 1,\n  \"final_partition\": [\n    [0,1,2]\n  ],\n  \"edge_colors\": []\n}\n"
        );
    }

    #[test]
    fn empty_graph_document() {
        let g = Graph::edgeless(0);
        let doc = parse_trace(&emit_trace(&refine(&g), &g)).unwrap();
        assert_eq!(doc.n, 0);
        assert_eq!(doc.converged_at, Some(1));
        assert!(doc.final_partition.is_empty());
    }

    #[test]
    fn path_of_five_document() {
        let g = Graph::path(5);
        let doc = parse_trace(&emit_trace(&refine(&g), &g)).unwrap();
        assert_eq!(doc.palette_sizes, vec![1, 2, 3, 3]);
        assert_eq!(doc.converged_at, Some(3));
        assert_eq!(doc.final_partition, vec![vec![0, 4], vec![1, 3], vec![2]]);
    }

    #[test]
    fn not_converged_marker() {
        let g = Graph::path(5);
        let t = refine_to_fixpoint(&g, &zero_coloring(&g), 1).unwrap();
        let text = emit_trace(&t, &g);
        assert!(text.contains("\"converged_at\": \"not converged\""));
        assert_eq!(parse_trace(&text).unwrap().converged_at, None);
        let bad = text.replace("not converged", "maybe");
        assert!(parse_trace(&bad).is_err());
    }

    #[test]
    fn edge_colors_and_run_echo() {
        let x = Graph::path(3).expand_edges();
        let t = refine(&x.graph);
        let mut run = BTreeMap::new();
        run.insert("expand_edges".to_string(), "true".to_string());
        let doc = TraceDocument::new(&t, &x.graph)
            .with_edge_colors(&t, &x)
            .with_run(run);
        assert_eq!(doc.edge_colors.len(), 2);
        assert_eq!(doc.edge_colors[0].color, doc.edge_colors[1].color);
        assert_eq!(parse_trace(&doc.to_text()).unwrap(), doc);
    }
}
