use crate::graph::Graph;
use crate::refine::Coloring;
use std::fmt::Write;

/// Graphviz HSV fill for a color id. Hues step by the golden ratio so
/// neighboring ids land far apart on the wheel; integer arithmetic keeps
/// the text identical on every platform.
pub fn fill_color(color: usize) -> String {
    let hue_thousandths = (color as u64).wrapping_mul(618_034) % 1_000_000 / 1_000;
    let saturation = if color.is_multiple_of(2) { "0.450" } else { "0.700" };
    format!("0.{hue_thousandths:03} {saturation} 0.950")
}

/// Renders `g` as an undirected DOT graph with each vertex labeled
/// `id:color` and filled by [`fill_color`].
pub fn emit_dot(g: &Graph, c: &Coloring) -> String {
    let mut out = String::from("graph coloring {\n  node [style=filled];\n");
    for (v, &color) in c.colors().iter().enumerate() {
        writeln!(
            out,
            "  {v} [label=\"{v}:{color}\", fillcolor=\"{}\"];",
            fill_color(color)
        )
        .unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
