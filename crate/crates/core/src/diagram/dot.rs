//! Graphviz export. Directed edges point along their orientation; unoriented
//! and unmarked edges are drawn without arrowheads (unmarked ones dashed).

use std::fmt::Write;

use super::{Orientation, SpliceDiagram};

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

pub fn to_dot(d: &SpliceDiagram) -> String {
    let mut out = String::from("digraph splice {\n  node [shape=box];\n");
    for (id, label) in d.vertices() {
        let _ = writeln!(out, "  {} [label={}];", quote(id), quote(&format!("{id}: {label}")));
    }
    for e in d.edges().values() {
        let (from, to) = match e.orient {
            Some(Orientation::To0) => (&e.ends[1], &e.ends[0]),
            _ => (&e.ends[0], &e.ends[1]),
        };
        let style = match e.orient {
            Some(Orientation::To0) | Some(Orientation::To1) => "",
            Some(Orientation::Unoriented) => ", dir=none",
            None => ", dir=none, style=dashed",
        };
        let _ = writeln!(
            out,
            "  {} -> {} [label={}, taillabel={}, headlabel={}{style}];",
            quote(&from.vertex),
            quote(&to.vertex),
            quote(&e.id),
            quote(&from.comp),
            quote(&to.comp),
        );
    }
    for (l, x) in d.externals() {
        let node = quote(&format!("ext:{l}"));
        let _ = writeln!(out, "  {node} [shape=plaintext, label={}];", quote(l));
        let _ = writeln!(
            out,
            "  {node} -> {} [dir=none, headlabel={}];",
            quote(&x.end.vertex),
            quote(&x.end.comp)
        );
    }
    out.push_str("}\n");
    out
}
