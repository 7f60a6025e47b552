use std::fmt::Write;

use super::FiniteOml;

/// Graphviz rendering of the Hasse diagram, bottom element at the bottom.
pub(super) fn hasse_dot(l: &FiniteOml) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for x in l.elements() {
        let _ = writeln!(out, "  n{} [label=\"{}\"];", x.index(), escape(l.name(x)));
    }
    for (lo, hi) in l.covers() {
        let _ = writeln!(out, "  n{} -> n{} [arrowhead=none];", lo.index(), hi.index());
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
