//! Graphviz export of the routing graph.

use std::fmt::Write as _;

use irs_route_core::RoutingGraph;

/// Vertices are labelled `0..=J+1`; edges carry their weight to four
/// decimals and negative edges are drawn red.
pub fn to_dot(graph: &RoutingGraph) -> String {
    let sink = graph.sink();
    let mut out = String::from("digraph routing {\n  rankdir=LR;\n");
    for v in 0..graph.vertex_count() {
        let shape = if v == 0 || v == sink { "box" } else { "circle" };
        let _ = writeln!(out, "  {v} [label=\"{v}\", shape={shape}];");
    }
    for e in graph.edges() {
        let _ = write!(out, "  {} -> {} [label=\"{:.4}\"", e.from, e.to, e.weight);
        if e.weight < 0.0 {
            out.push_str(", color=red, fontcolor=red");
        }
        out.push_str("];\n");
    }
    out.push_str("}\n");
    out
}
