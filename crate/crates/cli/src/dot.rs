//! Graphviz export of an enumerated interval of silting objects.

use std::fmt::Write;

use dgpp_core::silting::SiltingPosetSlice;
use dgpp_core::Gamma;

use crate::serialize::provenance_text;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn g_vector_text(v: &[Vec<i64>]) -> String {
    v.iter()
        .map(|b| format!("({})", b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Nodes in discovery order, labelled by provenance and g-vectors; edges
/// are left mutations labelled by the mutated vertex. Output depends only
/// on the slice.
pub fn export_dot(g: &Gamma, slice: &SiltingPosetSlice) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph silting {{");
    let _ = writeln!(out, "  // {} n={} W={}", escape(&g.quiver().name()), slice.n, slice.bound);
    let _ = writeln!(out, "  node [shape=box];");
    for (k, m) in slice.nodes.iter().enumerate() {
        let label = format!("{}\\n{}", escape(&provenance_text(g, &m.provenance)), g_vector_text(&m.g_vector(g)));
        let _ = writeln!(out, "  n{k} [label=\"{label}\"];");
    }
    let mut edges = slice.edges.clone();
    edges.sort();
    for (from, to, block) in edges {
        let _ = writeln!(out, "  n{from} -> n{to} [label=\"{}\"];", escape(g.quiver().vertex_label(block)));
    }
    out.push_str("}\n");
    out
}
