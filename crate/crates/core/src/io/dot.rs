//! Graphviz output for a graph with a highlighted partition.

use std::fmt::Write;

use crate::catalogue::LabeledPartition;
use crate::graph::Graph;

/// Undirected DOT with one dashed `cluster_<label>` subgraph per part.
pub fn emit_partition_dot(g: &Graph, p: &LabeledPartition) -> String {
    assert_eq!(g.order(), p.order(), "partition does not match graph order");
    let mut s = String::from("graph G {\n  node [shape=circle];\n");
    for label in 1..=p.num_parts() {
        let _ = writeln!(s, "  subgraph cluster_{label} {{");
        let _ = writeln!(s, "    style=dashed;");
        let _ = writeln!(s, "    label=\"{label}\";");
        for (v, _) in p.labels().iter().enumerate().filter(|(_, &l)| l == label) {
            let _ = writeln!(s, "    {v};");
        }
        s.push_str("  }\n");
    }
    for (u, v) in g.edge_list() {
        let _ = writeln!(s, "  {u} -- {v};");
    }
    s.push_str("}\n");
    s
}
