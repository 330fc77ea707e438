//! Static field-of-study network construction.
//!
//! Two steps: an author–field bipartite graph recording which papers witness
//! each link, then a one-mode projection in which fields `x` and `y` are
//! joined when at least one author has published in both. The weight of
//! `{x, y}` is the number of such authors, and each counted author is kept as
//! a witness so that edges can later be traced back to papers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::parallel::ordered_map;

/// Author–field incidence with the papers witnessing each link.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub authors: BTreeSet<String>,
    pub fields: BTreeSet<String>,
    /// `(author, field) -> witnessing paper ids` (sorted).
    pub links: BTreeMap<(String, String), Vec<String>>,
}

pub fn build_bipartite(corpus: &Corpus) -> BipartiteGraph {
    let mut g = BipartiteGraph::default();
    for paper in corpus.papers() {
        for a in &paper.author_ids {
            g.authors.insert(a.clone());
            for f in &paper.field_ids {
                g.fields.insert(f.clone());
                g.links
                    .entry((a.clone(), f.clone()))
                    .or_default()
                    .push(paper.id.clone());
            }
        }
    }
    // papers are visited in id order, so witness lists are already sorted
    g
}

/// How focal papers gate an author's contribution to a field pair.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FocalRule {
    /// Every author counts.
    #[default]
    Off,
    /// At least one endpoint must be tagged on one of the author's focal papers.
    Any,
    /// Both endpoints must be tagged on the author's focal papers.
    Both,
}

impl FocalRule {
    fn admits(self, focal_a: bool, focal_b: bool) -> bool {
        match self {
            FocalRule::Off => true,
            FocalRule::Any => focal_a || focal_b,
            FocalRule::Both => focal_a && focal_b,
        }
    }
}

impl FromStr for FocalRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "off" | "none" => Ok(FocalRule::Off),
            "any" => Ok(FocalRule::Any),
            "both" => Ok(FocalRule::Both),
            _ => Err(Error::InvalidParameter(format!(
                "focal rule `{s}` (expected off, any, both)"
            ))),
        }
    }
}

/// Edge-weight cut-off applied before analysis.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Threshold {
    #[default]
    None,
    /// Keep edges whose weight is at least the (unrounded) mean weight.
    Mean,
    /// Keep edges whose weight is at least the given value.
    Fixed(f64),
}

impl FromStr for Threshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Threshold::None),
            "mean" => Ok(Threshold::Mean),
            _ => {
                let value = s
                    .strip_prefix("fixed:")
                    .and_then(|v| v.parse::<f64>().ok())
                    .ok_or_else(|| {
                        Error::InvalidParameter(format!(
                            "threshold `{s}` (expected none, mean, fixed:<value>)"
                        ))
                    })?;
                if !(value.is_finite() && value > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "fixed threshold must be > 0, got {value}"
                    )));
                }
                Ok(Threshold::Fixed(value))
            }
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::None => f.write_str("none"),
            Threshold::Mean => f.write_str("mean"),
            Threshold::Fixed(v) => write!(f, "fixed:{v}"),
        }
    }
}

impl TryFrom<String> for Threshold {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Threshold> for String {
    fn from(t: Threshold) -> Self {
        t.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BuildConfig {
    pub focal: FocalRule,
    pub threshold: Threshold,
    pub drop_isolates: bool,
    /// Keep per-edge witness sets. Required for drill-down.
    pub retain_witnesses: bool,
    pub workers: usize,
}

impl Default for BuildConfig {
    fn default() -> Self {
        Self {
            focal: FocalRule::Off,
            threshold: Threshold::None,
            drop_isolates: true,
            retain_witnesses: true,
            workers: 1,
        }
    }
}

/// Papers through which one author witnesses an edge: those tagged with the
/// first endpoint and those tagged with the second.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub source_papers: Vec<String>,
    pub target_papers: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FosEdge {
    pub weight: u64,
    /// `author -> papers`; absent when witnesses were not retained.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<BTreeMap<String, Witness>>,
}

/// Exact arithmetic mean of edge weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeanWeight {
    pub sum: u64,
    pub count: u64,
}

impl MeanWeight {
    pub fn value(&self) -> f64 {
        self.sum as f64 / self.count as f64
    }

    /// Rounded half away from zero, for reporting.
    pub fn rounded(&self) -> u64 {
        (2 * self.sum + self.count) / (2 * self.count)
    }

    fn admits(&self, weight: u64) -> bool {
        weight as u128 * self.count as u128 >= self.sum as u128
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GraphMeta {
    pub focal: FocalRule,
    pub witnesses_retained: bool,
    /// Cut-off that produced this graph, if thresholded.
    pub threshold: Option<f64>,
    pub threshold_rule: Option<Threshold>,
    /// Mean weight of the graph the threshold was applied to.
    pub mean_weight: Option<MeanWeight>,
}

/// Weighted undirected field–field network. Edge keys are ordered pairs
/// `(a, b)` with `a < b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "FosGraphFile", try_from = "FosGraphFile")]
pub struct FosGraph {
    /// `field id -> display name`.
    pub nodes: BTreeMap<String, String>,
    pub edges: BTreeMap<(String, String), FosEdge>,
    pub meta: GraphMeta,
}

#[derive(Serialize, Deserialize)]
struct FosGraphFile {
    meta: GraphMeta,
    nodes: Vec<NodeEntry>,
    edges: Vec<EdgeEntry>,
}

#[derive(Serialize, Deserialize)]
struct NodeEntry {
    id: String,
    name: String,
}

#[derive(Serialize, Deserialize)]
struct EdgeEntry {
    source: String,
    target: String,
    #[serde(flatten)]
    edge: FosEdge,
}

impl From<FosGraph> for FosGraphFile {
    fn from(g: FosGraph) -> Self {
        Self {
            meta: g.meta,
            nodes: g
                .nodes
                .into_iter()
                .map(|(id, name)| NodeEntry { id, name })
                .collect(),
            edges: g
                .edges
                .into_iter()
                .map(|((source, target), edge)| EdgeEntry {
                    source,
                    target,
                    edge,
                })
                .collect(),
        }
    }
}

impl TryFrom<FosGraphFile> for FosGraph {
    type Error = Error;

    fn try_from(file: FosGraphFile) -> Result<Self> {
        let nodes: BTreeMap<String, String> =
            file.nodes.into_iter().map(|n| (n.id, n.name)).collect();
        let mut edges = BTreeMap::new();
        for e in file.edges {
            if e.source >= e.target {
                return Err(Error::Degenerate(format!(
                    "edge ({}, {}) is not in canonical order",
                    e.source, e.target
                )));
            }
            for end in [&e.source, &e.target] {
                if !nodes.contains_key(end) {
                    return Err(Error::UnknownField(end.clone()));
                }
            }
            edges.insert((e.source, e.target), e.edge);
        }
        Ok(FosGraph {
            nodes,
            edges,
            meta: file.meta,
        })
    }
}

impl FosGraph {
    pub fn edge(&self, a: &str, b: &str) -> Option<&FosEdge> {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.edges.get(&(key.0.to_string(), key.1.to_string()))
    }

    pub fn name<'a>(&'a self, id: &'a str) -> &'a str {
        self.nodes.get(id).map(String::as_str).unwrap_or(id)
    }

    /// The unweighted topology, nodes in id order.
    pub fn analysis_graph(&self) -> Graph {
        Graph::from_labelled_edges(
            self.nodes.keys().map(String::as_str),
            self.edges.keys().map(|(a, b)| (a.as_str(), b.as_str())),
        )
    }

    /// Edges whose witness count differs from their weight. Empty when the
    /// graph is consistent or witnesses were not retained.
    pub fn witness_mismatches(&self) -> Vec<(&str, &str)> {
        self.edges
            .iter()
            .filter(|(_, e)| {
                e.witnesses
                    .as_ref()
                    .is_some_and(|w| w.len() as u64 != e.weight)
            })
            .map(|((a, b), _)| (a.as_str(), b.as_str()))
            .collect()
    }
}

struct AuthorFields<'a> {
    author: &'a str,
    /// `(field, witnessing papers, tagged on a focal paper)`
    fields: Vec<(&'a str, &'a [String], bool)>,
}

type PairContribution<'a> = ((&'a str, &'a str), &'a str, &'a [String], &'a [String]);

/// Projects the bipartite graph onto fields.
///
/// Authors are counted once per pair no matter how many papers connect them
/// to it. Under a focal rule an author only counts towards a pair when the
/// focal condition holds for that author's own papers.
pub fn project(bipartite: &BipartiteGraph, corpus: &Corpus, config: &BuildConfig) -> FosGraph {
    let mut per_author: Vec<AuthorFields> = Vec::new();
    for ((author, field), papers) in &bipartite.links {
        let focal = config.focal != FocalRule::Off
            && papers
                .iter()
                .any(|p| corpus.paper(p).is_some_and(|p| p.focal));
        match per_author.last_mut() {
            Some(last) if last.author == author => last.fields.push((field, papers, focal)),
            _ => per_author.push(AuthorFields {
                author,
                fields: vec![(field, papers, focal)],
            }),
        }
    }

    let contributions: Vec<Vec<PairContribution>> =
        ordered_map(&per_author, config.workers, |af| {
            let mut out = Vec::new();
            for (i, &(fa, pa, focal_a)) in af.fields.iter().enumerate() {
                for &(fb, pb, focal_b) in &af.fields[i + 1..] {
                    if config.focal.admits(focal_a, focal_b) {
                        out.push(((fa, fb), af.author, pa, pb));
                    }
                }
            }
            out
        });

    let mut edges: BTreeMap<(String, String), FosEdge> = BTreeMap::new();
    for ((fa, fb), author, pa, pb) in contributions.into_iter().flatten() {
        let edge = edges
            .entry((fa.to_string(), fb.to_string()))
            .or_insert_with(|| FosEdge {
                weight: 0,
                witnesses: config.retain_witnesses.then(BTreeMap::new),
            });
        edge.weight += 1;
        if let Some(w) = edge.witnesses.as_mut() {
            w.insert(
                author.to_string(),
                Witness {
                    source_papers: pa.to_vec(),
                    target_papers: pb.to_vec(),
                },
            );
        }
    }

    let nodes = bipartite
        .fields
        .iter()
        .map(|f| (f.clone(), corpus.field_name(f).to_string()))
        .collect();
    FosGraph {
        nodes,
        edges,
        meta: GraphMeta {
            focal: config.focal,
            witnesses_retained: config.retain_witnesses,
            ..Default::default()
        },
    }
}

/// Both construction steps in one call.
pub fn build_static(corpus: &Corpus, config: &BuildConfig) -> FosGraph {
    project(&build_bipartite(corpus), corpus, config)
}

pub fn mean_edge_weight(graph: &FosGraph) -> Result<MeanWeight> {
    if graph.edges.is_empty() {
        return Err(Error::NoEdges);
    }
    Ok(MeanWeight {
        sum: graph.edges.values().map(|e| e.weight).sum(),
        count: graph.edges.len() as u64,
    })
}

/// Keeps edges with `weight >= t`. Weights and witnesses are preserved; the
/// result is meant to be analysed as an unweighted graph. An edgeless graph
/// under the mean rule is returned unchanged apart from isolate removal.
pub fn threshold(graph: &FosGraph, config: &BuildConfig) -> FosGraph {
    let mean = mean_edge_weight(graph).ok();
    let mut out = graph.clone();
    out.meta.threshold_rule = Some(config.threshold);
    out.meta.mean_weight = mean;
    match (config.threshold, mean) {
        (Threshold::None, _) => {}
        (Threshold::Mean, Some(mean)) => {
            out.edges.retain(|_, e| mean.admits(e.weight));
            out.meta.threshold = Some(mean.value());
        }
        (Threshold::Mean, None) => {}
        (Threshold::Fixed(t), _) => {
            out.edges.retain(|_, e| e.weight as f64 >= t);
            out.meta.threshold = Some(t);
        }
    }
    if config.drop_isolates {
        let touched: BTreeSet<&String> = out.edges.keys().flat_map(|(a, b)| [a, b]).collect();
        let keep: BTreeMap<String, String> = out
            .nodes
            .iter()
            .filter(|(id, _)| touched.contains(id))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        out.nodes = keep;
    }
    out
}
