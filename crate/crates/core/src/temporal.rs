//! Directed field-of-study networks across an event.
//!
//! Papers are split into a "pre" and a "post" period. An edge `x -> y` counts
//! the authors who published in `x` before the split and in `y` after it. The
//! pre and post node sets are distinct copies, so `x -> x` is a legitimate
//! edge meaning "stayed in the field".

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::builder::{FosEdge, Witness};
use crate::corpus::{Corpus, Paper};
use crate::error::{Error, Result};
use crate::parallel::ordered_map;

/// How papers are assigned to the two periods. Windows are inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SplitRule {
    Years {
        pre: (i32, i32),
        post: (i32, i32),
    },
    /// Post = focal papers; pre = non-focal papers, optionally limited to a window.
    Focal {
        pre_window: Option<(i32, i32)>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Period {
    Pre,
    Post,
}

impl SplitRule {
    pub fn validate(&self) -> Result<()> {
        let check = |(lo, hi): (i32, i32)| {
            if lo > hi {
                Err(Error::InvalidParameter(format!("empty window {lo}-{hi}")))
            } else {
                Ok(())
            }
        };
        match *self {
            SplitRule::Years { pre, post } => {
                check(pre)?;
                check(post)?;
                if pre.0 <= post.1 && post.0 <= pre.1 {
                    return Err(Error::OverlappingSplit(format!(
                        "pre {}-{} and post {}-{}",
                        pre.0, pre.1, post.0, post.1
                    )));
                }
                Ok(())
            }
            SplitRule::Focal { pre_window } => pre_window.map_or(Ok(()), check),
        }
    }

    fn period(&self, paper: &Paper) -> Option<Period> {
        let within = |(lo, hi): (i32, i32)| paper.year >= lo && paper.year <= hi;
        match *self {
            SplitRule::Years { pre, post } => {
                if within(pre) {
                    Some(Period::Pre)
                } else if within(post) {
                    Some(Period::Post)
                } else {
                    None
                }
            }
            SplitRule::Focal { pre_window } => {
                if paper.focal {
                    Some(Period::Post)
                } else if pre_window.is_none_or(within) {
                    Some(Period::Pre)
                } else {
                    None
                }
            }
        }
    }

    /// The same split with the periods exchanged. Only defined for year splits.
    pub fn reversed(&self) -> Option<SplitRule> {
        match *self {
            SplitRule::Years { pre, post } => Some(SplitRule::Years {
                pre: post,
                post: pre,
            }),
            SplitRule::Focal { .. } => None,
        }
    }
}

/// Accepts `focal`, `focal:2016-2019`, or `years:2016-2019:2020-2020`.
impl FromStr for SplitRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidParameter(format!(
                "split `{s}` (expected focal[:Y1-Y2] or years:Y1-Y2:Y3-Y4)"
            ))
        };
        let range = |r: &str| -> Result<(i32, i32)> {
            let (lo, hi) = r.split_once('-').ok_or_else(bad)?;
            Ok((
                lo.trim().parse().map_err(|_| bad())?,
                hi.trim().parse().map_err(|_| bad())?,
            ))
        };
        let parts: Vec<&str> = s.split(':').collect();
        let rule = match parts.as_slice() {
            ["focal"] => SplitRule::Focal { pre_window: None },
            ["focal", w] => SplitRule::Focal {
                pre_window: Some(range(w)?),
            },
            ["years", pre, post] => SplitRule::Years {
                pre: range(pre)?,
                post: range(post)?,
            },
            _ => return Err(bad()),
        };
        rule.validate()?;
        Ok(rule)
    }
}

impl fmt::Display for SplitRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplitRule::Focal { pre_window: None } => f.write_str("focal"),
            SplitRule::Focal {
                pre_window: Some((lo, hi)),
            } => write!(f, "focal:{lo}-{hi}"),
            SplitRule::Years { pre, post } => {
                write!(f, "years:{}-{}:{}-{}", pre.0, pre.1, post.0, post.1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TemporalConfig {
    pub split: SplitRule,
    pub retain_witnesses: bool,
    pub workers: usize,
}

impl Default for TemporalConfig {
    fn default() -> Self {
        Self {
            split: SplitRule::Focal { pre_window: None },
            retain_witnesses: true,
            workers: 1,
        }
    }
}

/// Directed pre -> post network. Edge keys are `(pre field, post field)`.
/// Witnesses record, per author, the pre papers tagged with the source and
/// the post papers tagged with the target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "TemporalFile", try_from = "TemporalFile")]
pub struct TemporalFosGraph {
    pub names: BTreeMap<String, String>,
    pub pre_nodes: BTreeSet<String>,
    pub post_nodes: BTreeSet<String>,
    pub edges: BTreeMap<(String, String), FosEdge>,
    pub split: SplitRule,
    pub witnesses_retained: bool,
    /// `author -> fields of that author's post papers`, kept with witnesses.
    pub author_post_fields: BTreeMap<String, BTreeSet<String>>,
}

#[derive(Serialize, Deserialize)]
struct TemporalFile {
    split: SplitRule,
    witnesses_retained: bool,
    names: BTreeMap<String, String>,
    pre_nodes: BTreeSet<String>,
    post_nodes: BTreeSet<String>,
    edges: Vec<TemporalEdgeEntry>,
    #[serde(default)]
    author_post_fields: BTreeMap<String, BTreeSet<String>>,
}

#[derive(Serialize, Deserialize)]
struct TemporalEdgeEntry {
    source: String,
    target: String,
    #[serde(flatten)]
    edge: FosEdge,
}

impl From<TemporalFosGraph> for TemporalFile {
    fn from(g: TemporalFosGraph) -> Self {
        Self {
            split: g.split,
            witnesses_retained: g.witnesses_retained,
            names: g.names,
            pre_nodes: g.pre_nodes,
            post_nodes: g.post_nodes,
            edges: g
                .edges
                .into_iter()
                .map(|((source, target), edge)| TemporalEdgeEntry {
                    source,
                    target,
                    edge,
                })
                .collect(),
            author_post_fields: g.author_post_fields,
        }
    }
}

impl TryFrom<TemporalFile> for TemporalFosGraph {
    type Error = Error;

    fn try_from(f: TemporalFile) -> Result<Self> {
        let mut edges = BTreeMap::new();
        for e in f.edges {
            if !f.pre_nodes.contains(&e.source) {
                return Err(Error::UnknownField(e.source));
            }
            if !f.post_nodes.contains(&e.target) {
                return Err(Error::UnknownField(e.target));
            }
            edges.insert((e.source, e.target), e.edge);
        }
        Ok(Self {
            names: f.names,
            pre_nodes: f.pre_nodes,
            post_nodes: f.post_nodes,
            edges,
            split: f.split,
            witnesses_retained: f.witnesses_retained,
            author_post_fields: f.author_post_fields,
        })
    }
}

impl TemporalFosGraph {
    pub fn name<'a>(&'a self, id: &'a str) -> &'a str {
        self.names.get(id).map(String::as_str).unwrap_or(id)
    }

    pub fn edge(&self, src: &str, dst: &str) -> Option<&FosEdge> {
        self.edges.get(&(src.to_string(), dst.to_string()))
    }

    fn with_edges(&self, edges: BTreeMap<(String, String), FosEdge>) -> Self {
        let pre_nodes = edges.keys().map(|(s, _)| s.clone()).collect();
        let post_nodes = edges.keys().map(|(_, d)| d.clone()).collect();
        Self {
            pre_nodes,
            post_nodes,
            edges,
            ..self.clone()
        }
    }
}

#[derive(Default)]
struct AuthorPeriods<'a> {
    pre: BTreeMap<&'a str, Vec<&'a str>>,
    post: BTreeMap<&'a str, Vec<&'a str>>,
}

pub fn build_temporal(corpus: &Corpus, config: &TemporalConfig) -> Result<TemporalFosGraph> {
    config.split.validate()?;
    let mut pre_nodes = BTreeSet::new();
    let mut post_nodes = BTreeSet::new();
    let mut per_author: Vec<(&str, AuthorPeriods)> = Vec::with_capacity(corpus.authors().len());

    for (a, author) in corpus.authors().iter().enumerate() {
        let mut periods = AuthorPeriods::default();
        for &p in corpus.author_papers_idx(a) {
            let paper = &corpus.papers()[p];
            let (bucket, nodes) = match config.split.period(paper) {
                Some(Period::Pre) => (&mut periods.pre, &mut pre_nodes),
                Some(Period::Post) => (&mut periods.post, &mut post_nodes),
                None => continue,
            };
            for f in &paper.field_ids {
                bucket
                    .entry(f.as_str())
                    .or_default()
                    .push(paper.id.as_str());
                nodes.insert(f.clone());
            }
        }
        per_author.push((author.id.as_str(), periods));
    }

    let contributions = ordered_map(&per_author, config.workers, |(author, periods)| {
        let mut out = Vec::new();
        for (src, pre_papers) in &periods.pre {
            for (dst, post_papers) in &periods.post {
                out.push((
                    (*src, *dst),
                    *author,
                    pre_papers.clone(),
                    post_papers.clone(),
                ));
            }
        }
        out
    });

    let mut edges: BTreeMap<(String, String), FosEdge> = BTreeMap::new();
    for ((src, dst), author, pre_papers, post_papers) in contributions.into_iter().flatten() {
        let edge = edges
            .entry((src.to_string(), dst.to_string()))
            .or_insert_with(|| FosEdge {
                weight: 0,
                witnesses: config.retain_witnesses.then(BTreeMap::new),
            });
        edge.weight += 1;
        if let Some(w) = edge.witnesses.as_mut() {
            w.insert(
                author.to_string(),
                Witness {
                    source_papers: pre_papers.iter().map(|s| s.to_string()).collect(),
                    target_papers: post_papers.iter().map(|s| s.to_string()).collect(),
                },
            );
        }
    }

    let author_post_fields = if config.retain_witnesses {
        per_author
            .iter()
            .filter(|(_, p)| !p.post.is_empty())
            .map(|(a, p)| {
                (
                    a.to_string(),
                    p.post.keys().map(|f| f.to_string()).collect(),
                )
            })
            .collect()
    } else {
        BTreeMap::new()
    };
    let names = pre_nodes
        .iter()
        .chain(&post_nodes)
        .map(|f| (f.clone(), corpus.field_name(f).to_string()))
        .collect();
    Ok(TemporalFosGraph {
        names,
        pre_nodes,
        post_nodes,
        edges,
        split: config.split,
        witnesses_retained: config.retain_witnesses,
        author_post_fields,
    })
}

/// Subgraph induced by the `k` heaviest edges, ties broken by source then
/// target id.
pub fn top_k_edges(graph: &TemporalFosGraph, k: usize) -> Result<TemporalFosGraph> {
    if k == 0 {
        return Err(Error::InvalidParameter("top-k requires k >= 1".into()));
    }
    let mut ranked: Vec<(&(String, String), &FosEdge)> = graph.edges.iter().collect();
    // BTreeMap order already sorts by (src, dst); a stable sort on weight keeps it
    ranked.sort_by_key(|e| std::cmp::Reverse(e.1.weight));
    let kept = ranked
        .into_iter()
        .take(k)
        .map(|(key, e)| (key.clone(), e.clone()))
        .collect();
    Ok(graph.with_edges(kept))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RestrictMode {
    /// Edges whose post endpoint is the anchor field.
    Endpoint,
    /// Edges witnessed by an author with a post paper tagged with the anchor.
    #[default]
    Witness,
}

impl FromStr for RestrictMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "endpoint" => Ok(RestrictMode::Endpoint),
            "witness" => Ok(RestrictMode::Witness),
            _ => Err(Error::InvalidParameter(format!(
                "restrict mode `{s}` (expected endpoint, witness)"
            ))),
        }
    }
}

/// Narrows the graph to the backgrounds of authors active in `field_id`
/// after the split.
pub fn restrict_post_field(
    graph: &TemporalFosGraph,
    field_id: &str,
    mode: RestrictMode,
) -> Result<TemporalFosGraph> {
    if !graph.post_nodes.contains(field_id) {
        return Err(Error::UnknownField(field_id.to_string()));
    }
    let kept = match mode {
        RestrictMode::Endpoint => graph
            .edges
            .iter()
            .filter(|((_, dst), _)| dst == field_id)
            .map(|(k, e)| (k.clone(), e.clone()))
            .collect(),
        RestrictMode::Witness => {
            if !graph.witnesses_retained {
                return Err(Error::WitnessesUnavailable);
            }
            let anchored = |author: &String| {
                graph
                    .author_post_fields
                    .get(author)
                    .is_some_and(|fs| fs.contains(field_id))
            };
            graph
                .edges
                .iter()
                .filter(|(_, e)| e.witnesses.as_ref().is_some_and(|w| w.keys().any(anchored)))
                .map(|(k, e)| (k.clone(), e.clone()))
                .collect()
        }
    };
    Ok(graph.with_edges(kept))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Author, FieldRef, IngestConfig, PaperRecord};

    fn rec(id: &str, year: i32, authors: &[&str], fields: &[&str], focal: bool) -> PaperRecord {
        PaperRecord {
            id: id.into(),
            title: String::new(),
            abstract_text: None,
            year,
            authors: authors
                .iter()
                .map(|a| Author {
                    id: a.to_string(),
                    name: None,
                })
                .collect(),
            fields: fields
                .iter()
                .map(|f| FieldRef {
                    id: f.to_string(),
                    name: f.to_string(),
                    level: 1,
                    parent_ids: vec![],
                })
                .collect(),
            focal,
        }
    }

    fn build(recs: Vec<PaperRecord>, split: SplitRule) -> TemporalFosGraph {
        let c = Corpus::from_records(recs, &IngestConfig::default()).unwrap();
        build_temporal(
            &c,
            &TemporalConfig {
                split,
                ..Default::default()
            },
        )
        .unwrap()
    }

    fn years() -> SplitRule {
        SplitRule::Years {
            pre: (2016, 2019),
            post: (2020, 2020),
        }
    }

    fn edge_list(g: &TemporalFosGraph) -> Vec<(&str, &str, u64)> {
        g.edges
            .iter()
            .map(|((s, d), e)| (s.as_str(), d.as_str(), e.weight))
            .collect()
    }

    #[test]
    fn single_crossing_author() {
        let g = build(
            vec![
                rec("p1", 2018, &["a"], &["X"], false),
                rec("p2", 2020, &["a"], &["Y"], true),
            ],
            years(),
        );
        assert_eq!(edge_list(&g), vec![("X", "Y", 1)]);
    }

    #[test]
    fn pre_only_author_contributes_nothing() {
        let g = build(vec![rec("p1", 2018, &["a"], &["X", "Y"], false)], years());
        assert!(g.edges.is_empty());
        assert_eq!(g.pre_nodes.len(), 2);
    }

    #[test]
    fn self_transitions_are_edges() {
        let g = build(
            vec![
                rec("p1", 2017, &["a"], &["X"], false),
                rec("p2", 2020, &["a"], &["X"], true),
            ],
            SplitRule::Focal { pre_window: None },
        );
        assert_eq!(edge_list(&g), vec![("X", "X", 1)]);
    }

    #[test]
    fn overlapping_windows_are_rejected() {
        let split = SplitRule::Years {
            pre: (2016, 2020),
            post: (2020, 2021),
        };
        let c = Corpus::empty();
        assert!(matches!(
            build_temporal(
                &c,
                &TemporalConfig {
                    split,
                    ..Default::default()
                }
            ),
            Err(Error::OverlappingSplit(_))
        ));
        assert!("years:2016-2020:2020-2021".parse::<SplitRule>().is_err());
    }

    #[test]
    fn split_parsing_round_trips() {
        for s in ["focal", "focal:2016-2019", "years:2016-2019:2020-2020"] {
            assert_eq!(s.parse::<SplitRule>().unwrap().to_string(), s);
        }
        assert!("decade".parse::<SplitRule>().is_err());
    }

    fn weighted(ws: &[(&str, &str, u64)]) -> TemporalFosGraph {
        let edges: BTreeMap<_, _> = ws
            .iter()
            .map(|&(s, d, w)| {
                (
                    (s.to_string(), d.to_string()),
                    FosEdge {
                        weight: w,
                        witnesses: None,
                    },
                )
            })
            .collect();
        TemporalFosGraph {
            names: BTreeMap::new(),
            pre_nodes: ws.iter().map(|e| e.0.to_string()).collect(),
            post_nodes: ws.iter().map(|e| e.1.to_string()).collect(),
            edges,
            split: years(),
            witnesses_retained: false,
            author_post_fields: BTreeMap::new(),
        }
    }

    #[test]
    fn top_k_basics() {
        let g = weighted(&[("A", "B", 5), ("A", "C", 3)]);
        assert_eq!(top_k_edges(&g, 5).unwrap(), g);
        assert_eq!(edge_list(&top_k_edges(&g, 1).unwrap()), vec![("A", "B", 5)]);
        assert!(top_k_edges(&g, 0).is_err());
    }

    #[test]
    fn top_k_tie_break_by_source_then_target() {
        let g = weighted(&[("B", "X", 4), ("A", "Z", 4), ("A", "Y", 4), ("C", "C", 9)]);
        let top = top_k_edges(&g, 3).unwrap();
        assert_eq!(
            edge_list(&top),
            vec![("A", "Y", 4), ("A", "Z", 4), ("C", "C", 9)]
        );
        assert_eq!(
            top.pre_nodes,
            ["A", "C"].iter().map(|s| s.to_string()).collect()
        );
    }

    #[test]
    fn restriction_modes() {
        let g = build(
            vec![
                rec("p1", 2018, &["a"], &["S"], false),
                rec("p2", 2020, &["a"], &["E", "M"], true),
                rec("p3", 2018, &["b"], &["T"], false),
                rec("p4", 2020, &["b"], &["M"], true),
            ],
            SplitRule::Focal { pre_window: None },
        );
        let endpoint = restrict_post_field(&g, "E", RestrictMode::Endpoint).unwrap();
        assert_eq!(edge_list(&endpoint), vec![("S", "E", 1)]);
        let witness = restrict_post_field(&g, "E", RestrictMode::Witness).unwrap();
        assert_eq!(edge_list(&witness), vec![("S", "E", 1), ("S", "M", 1)]);
        assert!(matches!(
            restrict_post_field(&g, "nope", RestrictMode::Endpoint),
            Err(Error::UnknownField(_))
        ));
    }

    #[test]
    fn restriction_to_field_without_edges_is_empty() {
        let g = build(
            vec![
                rec("p1", 2018, &["a"], &["S"], false),
                rec("p2", 2020, &["b"], &["E"], true),
            ],
            SplitRule::Focal { pre_window: None },
        );
        let r = restrict_post_field(&g, "E", RestrictMode::Endpoint).unwrap();
        assert!(r.edges.is_empty() && r.pre_nodes.is_empty() && r.post_nodes.is_empty());
    }
}
