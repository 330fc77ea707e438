//! File formats for graphs and analysis results.
//!
//! Writers take any `io::Write`. Floats are written in shortest round-trip
//! form, so identical results give byte-identical files.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::builder::FosGraph;
use crate::centrality::CentralityReport;
use crate::community::CommunityAssignment;
use crate::error::{Error, Result};
use crate::roles::{RoleModel, StabilityRow};
use crate::temporal::TemporalFosGraph;

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn finish<W: Write>(w: csv::Writer<W>) -> Result<()> {
    w.into_inner()
        .map_err(|e| Error::io("csv output", e.into_error()))?
        .flush()
        .map_err(|e| Error::io("csv output", e))
}

/// `src_field,dst_field,weight,n_witnesses`; the last column is empty when
/// witnesses were not retained.
pub fn write_edges_csv(graph: &FosGraph, out: impl Write) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["src_field", "dst_field", "weight", "n_witnesses"])?;
    for ((a, b), e) in &graph.edges {
        let n = e
            .witnesses
            .as_ref()
            .map(|ws| ws.len().to_string())
            .unwrap_or_default();
        w.write_record([a.as_str(), b.as_str(), &e.weight.to_string(), &n])?;
    }
    finish(w)
}

/// `field,name`
pub fn write_nodes_csv(graph: &FosGraph, out: impl Write) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["field", "name"])?;
    for (id, name) in &graph.nodes {
        w.write_record([id, name])?;
    }
    finish(w)
}

#[derive(Serialize)]
struct WitnessLine<'a> {
    src_field: &'a str,
    dst_field: &'a str,
    author: &'a str,
    src_papers: &'a [String],
    dst_papers: &'a [String],
}

fn witness_lines<'a>(
    edges: impl Iterator<Item = (&'a (String, String), &'a crate::builder::FosEdge)>,
    mut out: impl Write,
) -> Result<()> {
    for ((a, b), e) in edges {
        let ws = e.witnesses.as_ref().ok_or(Error::WitnessesUnavailable)?;
        for (author, wit) in ws {
            let line = WitnessLine {
                src_field: a,
                dst_field: b,
                author,
                src_papers: &wit.source_papers,
                dst_papers: &wit.target_papers,
            };
            serde_json::to_writer(&mut out, &line)?;
            out.write_all(b"\n")
                .map_err(|e| Error::io("witness output", e))?;
        }
    }
    out.flush().map_err(|e| Error::io("witness output", e))
}

/// One JSON object per (edge, author).
pub fn write_witnesses_jsonl(graph: &FosGraph, out: impl Write) -> Result<()> {
    witness_lines(graph.edges.iter(), out)
}

pub fn write_temporal_witnesses_jsonl(graph: &TemporalFosGraph, out: impl Write) -> Result<()> {
    witness_lines(graph.edges.iter(), out)
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn write_text(mut out: impl Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Error::io("graph output", e))
}

/// Undirected GraphML with a `name` node attribute and a `weight` edge attribute.
pub fn write_graphml(graph: &FosGraph, out: impl Write) -> Result<()> {
    let mut s = String::from(concat!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
        "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n",
        "  <key id=\"name\" for=\"node\" attr.name=\"name\" attr.type=\"string\"/>\n",
        "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n",
        "  <graph id=\"fos\" edgedefault=\"undirected\">\n",
    ));
    for (id, name) in &graph.nodes {
        s.push_str(&format!(
            "    <node id=\"{}\"><data key=\"name\">{}</data></node>\n",
            xml_escape(id),
            xml_escape(name)
        ));
    }
    for ((a, b), e) in &graph.edges {
        s.push_str(&format!(
            "    <edge source=\"{}\" target=\"{}\"><data key=\"weight\">{}</data></edge>\n",
            xml_escape(a),
            xml_escape(b),
            e.weight
        ));
    }
    s.push_str("  </graph>\n</graphml>\n");
    write_text(out, &s)
}

pub fn write_dot(graph: &FosGraph, out: impl Write) -> Result<()> {
    let mut s = String::from("graph fos {\n");
    for (id, name) in &graph.nodes {
        s.push_str(&format!(
            "  {} [label={}];\n",
            dot_quote(id),
            dot_quote(name)
        ));
    }
    for ((a, b), e) in &graph.edges {
        s.push_str(&format!(
            "  {} -- {} [weight={}];\n",
            dot_quote(a),
            dot_quote(b),
            e.weight
        ));
    }
    s.push_str("}\n");
    write_text(out, &s)
}

/// Flow table `src_field,dst_field,weight`, heaviest first.
pub fn write_flows_csv(graph: &TemporalFosGraph, out: impl Write) -> Result<()> {
    let mut edges: Vec<_> = graph.edges.iter().collect();
    edges.sort_by_key(|e| std::cmp::Reverse(e.1.weight));
    let mut w = csv_writer(out);
    w.write_record(["src_field", "dst_field", "weight"])?;
    for ((a, b), e) in edges {
        w.write_record([a.as_str(), b.as_str(), &e.weight.to_string()])?;
    }
    finish(w)
}

/// Directed DOT with the pre-period copies ranked left of the post-period ones.
pub fn write_temporal_dot(graph: &TemporalFosGraph, out: impl Write) -> Result<()> {
    let mut s = String::from("digraph flows {\n  rankdir=LR;\n");
    for (prefix, nodes) in [("pre", &graph.pre_nodes), ("post", &graph.post_nodes)] {
        s.push_str(&format!(
            "  subgraph cluster_{prefix} {{\n    rank=same; label={prefix};\n"
        ));
        for id in nodes {
            s.push_str(&format!(
                "    {} [label={}];\n",
                dot_quote(&format!("{prefix}:{id}")),
                dot_quote(graph.name(id))
            ));
        }
        s.push_str("  }\n");
    }
    for ((a, b), e) in &graph.edges {
        s.push_str(&format!(
            "  {} -> {} [weight={}];\n",
            dot_quote(&format!("pre:{a}")),
            dot_quote(&format!("post:{b}")),
            e.weight
        ));
    }
    s.push_str("}\n");
    write_text(out, &s)
}

/// `node,degree,degree_c,betweenness,closeness,eigenvector`
pub fn write_centrality_csv(report: &CentralityReport, out: impl Write) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record([
        "node",
        "degree",
        "degree_c",
        "betweenness",
        "closeness",
        "eigenvector",
    ])?;
    for c in &report.nodes {
        w.write_record([
            c.node.clone(),
            c.degree.to_string(),
            c.degree_centrality.to_string(),
            c.betweenness.to_string(),
            c.closeness.to_string(),
            c.eigenvector.to_string(),
        ])?;
    }
    finish(w)
}

/// `node,community`; unassigned nodes have an empty community.
pub fn write_assignment_csv(assignment: &CommunityAssignment, out: impl Write) -> Result<()> {
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &assignment.community {
        *sizes.entry(c).or_insert(0) += 1;
    }
    let mut w = csv_writer(out);
    w.write_record(["node", "community"])?;
    for (node, &c) in assignment.nodes.iter().zip(&assignment.community) {
        let label = if sizes[&c] >= assignment.min_size {
            c.to_string()
        } else {
            String::new()
        };
        w.write_record([node.as_str(), &label])?;
    }
    finish(w)
}

/// `node,v1..vd`
pub fn write_embedding_csv(model: &RoleModel, out: impl Write) -> Result<()> {
    let d = model.embedding.first().map_or(0, Vec::len);
    let mut w = csv_writer(out);
    let mut header = vec!["node".to_string()];
    header.extend((1..=d).map(|i| format!("v{i}")));
    w.write_record(&header)?;
    for (node, v) in model.nodes.iter().zip(&model.embedding) {
        let mut row = vec![node.clone()];
        row.extend(v.iter().map(f64::to_string));
        w.write_record(&row)?;
    }
    finish(w)
}

/// `node,role`
pub fn write_roles_csv(model: &RoleModel, out: impl Write) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["node", "role"])?;
    for (node, &r) in model.nodes.iter().zip(&model.labels) {
        w.write_record([node.as_str(), &r.to_string()])?;
    }
    finish(w)
}

/// `k,silhouette,selected`
pub fn write_silhouette_csv(model: &RoleModel, out: impl Write) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["k", "silhouette", "selected"])?;
    for p in &model.silhouette_curve {
        w.write_record([
            p.k.to_string(),
            p.silhouette.to_string(),
            (p.k == model.k_selected).to_string(),
        ])?;
    }
    finish(w)
}

pub fn write_stability_csv(rows: &[StabilityRow], out: impl Write) -> Result<()> {
    let mut w = csv_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    finish(w)
}

/// Pretty JSON with a trailing newline.
pub fn write_json<T: Serialize + ?Sized>(value: &T, mut out: impl Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")
        .and_then(|_| out.flush())
        .map_err(|e| Error::io("json output", e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{FosEdge, GraphMeta, Witness};

    fn tiny() -> FosGraph {
        let mut witnesses = BTreeMap::new();
        witnesses.insert(
            "a1".to_string(),
            Witness {
                source_papers: vec!["p1".into()],
                target_papers: vec!["p2".into()],
            },
        );
        FosGraph {
            nodes: [("x", "X & co"), ("y", "Y \"why\"")]
                .into_iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            edges: [(
                ("x".to_string(), "y".to_string()),
                FosEdge {
                    weight: 1,
                    witnesses: Some(witnesses),
                },
            )]
            .into_iter()
            .collect(),
            meta: GraphMeta::default(),
        }
    }

    fn render(f: impl Fn(&mut Vec<u8>) -> Result<()>) -> String {
        let mut buf = Vec::new();
        f(&mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn edge_and_node_csv() {
        let g = tiny();
        assert_eq!(
            render(|b| write_edges_csv(&g, b)),
            "src_field,dst_field,weight,n_witnesses\nx,y,1,1\n"
        );
        assert_eq!(
            render(|b| write_nodes_csv(&g, b)),
            "field,name\nx,X & co\ny,\"Y \"\"why\"\"\"\n"
        );
    }

    #[test]
    fn markup_is_escaped() {
        let g = tiny();
        let xml = render(|b| write_graphml(&g, b));
        assert!(xml.contains("X &amp; co"));
        assert!(xml.contains("Y &quot;why&quot;"));
        let dot = render(|b| write_dot(&g, b));
        assert!(dot.contains("[label=\"Y \\\"why\\\"\"]"));
    }

    #[test]
    fn witness_dump_has_one_line_per_author() {
        let g = tiny();
        let out = render(|b| write_witnesses_jsonl(&g, b));
        assert_eq!(out.lines().count(), 1);
        assert!(out.contains("\"author\":\"a1\""));
        let mut bare = g.clone();
        bare.edges.values_mut().for_each(|e| e.witnesses = None);
        assert!(matches!(
            write_witnesses_jsonl(&bare, Vec::new()),
            Err(Error::WitnessesUnavailable)
        ));
    }
}
