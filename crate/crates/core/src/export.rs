//! Graphviz output for inspection.

use std::fmt::Write;

use crate::connect::DPartition;
use crate::graph::{Graph, Vertex};

const PALETTE: [&str; 8] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999",
];

fn edges(g: &Graph, out: &mut String) {
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {} -- {};", g.id(u), g.id(v));
    }
}

/// The graph with the cluster of `center` filled and the center boxed.
pub fn cover_cluster_dot(g: &Graph, center: Vertex, cluster: &[Vertex]) -> String {
    let mut out = String::from("graph cover {\n  node [style=filled, fillcolor=white];\n");
    for &v in cluster {
        let shape = if v == center { "box" } else { "ellipse" };
        let _ = writeln!(out, "  {} [fillcolor=\"#9ecae1\", shape={shape}];", g.id(v));
    }
    for v in g.vertices().filter(|v| cluster.binary_search(v).is_err()) {
        let _ = writeln!(out, "  {};", g.id(v));
    }
    edges(g, &mut out);
    out.push_str("}\n");
    out
}

/// Blocks of a partition in distinct colours, dominators boxed, and the
/// vertices of `highlight` drawn bold.
pub fn partition_dot(g: &Graph, partition: &DPartition, highlight: &[Vertex]) -> String {
    let mut out = String::from("graph blocks {\n  node [style=filled];\n");
    for v in g.vertices() {
        let owner = partition.owner[v];
        let block = partition.dominators.binary_search(&owner).unwrap_or(0);
        let shape = if owner == v { "box" } else { "ellipse" };
        let pen = if highlight.contains(&v) { 3 } else { 1 };
        let _ = writeln!(
            out,
            "  {} [fillcolor=\"{}\", shape={shape}, penwidth={pen}];",
            g.id(v),
            PALETTE[block % PALETTE.len()]
        );
    }
    edges(g, &mut out);
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connect::d_partition;
    use crate::generate::{generate, Family};

    #[test]
    fn p5_blocks() {
        let g = generate(&Family::Path { n: 5 }, 0).unwrap();
        let part = d_partition(&g, &[1, 3], 1).unwrap();
        let dot = partition_dot(&g, &part, &[2]);
        assert!(dot.starts_with("graph blocks {"));
        assert!(dot.contains("2 [fillcolor=\"#e41a1c\", shape=box, penwidth=1];"));
        assert!(dot.contains("3 [fillcolor=\"#e41a1c\", shape=ellipse, penwidth=3];"));
        assert!(dot.contains("5 [fillcolor=\"#377eb8\""));
        assert_eq!(dot.matches(" -- ").count(), 4);
    }

    #[test]
    fn cluster_marks_members() {
        let g = generate(&Family::Path { n: 3 }, 0).unwrap();
        let dot = cover_cluster_dot(&g, 0, &[0, 1]);
        assert!(dot.contains("1 [fillcolor=\"#9ecae1\", shape=box];"));
        assert!(dot.contains("  3;\n"));
    }
}
