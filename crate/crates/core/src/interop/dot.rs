use std::fmt::Write as _;

use crate::ontology::Ontology;

/// Graphviz digraph of the class hierarchy, edges pointing child to parent.
pub fn export_dot(ont: &Ontology) -> String {
    let mut out = String::from("digraph classes {\n  rankdir=BT;\n  node [shape=box];\n");
    for c in ont.classes() {
        let _ = writeln!(out, "  \"{}\";", c.id);
    }
    let mut edges = ont.subclass_edges();
    edges.sort();
    for (sub, sup) in edges {
        let _ = writeln!(out, "  \"{sub}\" -> \"{sup}\";");
    }
    out.push_str("}\n");
    out
}
