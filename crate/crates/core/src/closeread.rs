//! Drill-down from an edge to the papers, words and finer fields behind it.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::builder::{FocalRule, FosEdge, FosGraph};
use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::temporal::TemporalFosGraph;

const SUGGESTIONS: usize = 3;
const MIN_TOKEN_CHARS: usize = 3;

const DEFAULT_STOPWORDS: &[&str] = &[
    "about", "above", "after", "again", "against", "all", "also", "among", "an", "and", "any",
    "are", "based", "because", "been", "before", "being", "between", "both", "but", "can", "could",
    "did", "does", "doing", "down", "during", "each", "few", "for", "from", "further", "had",
    "has", "have", "having", "here", "how", "into", "its", "itself", "may", "more", "most", "new",
    "non", "not", "now", "off", "once", "only", "other", "our", "out", "over", "own", "paper",
    "present", "results", "same", "several", "should", "show", "shown", "some", "study", "such",
    "than", "that", "the", "their", "them", "then", "there", "these", "they", "this", "those",
    "through", "two", "under", "until", "use", "used", "using", "very", "was", "well", "were",
    "what", "when", "where", "which", "while", "who", "whom", "why", "will", "with", "within",
    "would", "yet", "you", "your",
];

/// One author's contribution to an edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRow {
    pub author: String,
    pub source_papers: Vec<String>,
    pub target_papers: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeProvenance {
    pub source: String,
    pub target: String,
    pub directed: bool,
    pub weight: u64,
    pub witnesses: Vec<WitnessRow>,
    /// Papers behind the edge, sorted. For a static graph built under a focal
    /// rule only focal papers are listed; for a temporal graph these are the
    /// post-period papers tagged with the target field.
    pub papers: Vec<String>,
}

/// Resolves a field given by id or, failing that, by case-insensitive name.
fn resolve<'a>(names: &'a BTreeMap<String, String>, query: &str) -> Option<&'a str> {
    if let Some((id, _)) = names.get_key_value(query) {
        return Some(id);
    }
    let mut hits = names
        .iter()
        .filter(|(_, name)| name.eq_ignore_ascii_case(query));
    match (hits.next(), hits.next()) {
        (Some((id, _)), None) => Some(id),
        _ => None,
    }
}

fn similarity(query: &str, id: &str, name: &str) -> f64 {
    let q = query.to_lowercase();
    strsim::jaro_winkler(&q, &id.to_lowercase()).max(strsim::jaro_winkler(&q, &name.to_lowercase()))
}

fn suggest<'a>(
    names: &BTreeMap<String, String>,
    edges: impl Iterator<Item = &'a (String, String)>,
    src: &str,
    dst: &str,
    directed: bool,
) -> Vec<String> {
    let name = |id: &str| names.get(id).map(String::as_str).unwrap_or(id).to_string();
    let mut scored: Vec<(f64, String)> = edges
        .map(|(a, b)| {
            let forward = similarity(src, a, &name(a)) + similarity(dst, b, &name(b));
            let score = if directed {
                forward
            } else {
                forward.max(similarity(src, b, &name(b)) + similarity(dst, a, &name(a)))
            };
            (score, format!("{},{}", name(a), name(b)))
        })
        .collect();
    scored.sort_by(|x, y| y.0.total_cmp(&x.0).then_with(|| x.1.cmp(&y.1)));
    scored
        .into_iter()
        .take(SUGGESTIONS)
        .map(|(_, s)| s)
        .collect()
}

fn provenance(
    source: &str,
    target: &str,
    directed: bool,
    edge: &FosEdge,
    keep: impl Fn(&str) -> bool,
    both_sides: bool,
) -> Result<EdgeProvenance> {
    let witnesses = edge.witnesses.as_ref().ok_or(Error::WitnessesUnavailable)?;
    let mut papers = BTreeSet::new();
    let rows = witnesses
        .iter()
        .map(|(author, w)| {
            let sides: &[&Vec<String>] = if both_sides {
                &[&w.source_papers, &w.target_papers]
            } else {
                &[&w.target_papers]
            };
            for side in sides {
                papers.extend(side.iter().filter(|p| keep(p)).cloned());
            }
            WitnessRow {
                author: author.clone(),
                source_papers: w.source_papers.clone(),
                target_papers: w.target_papers.clone(),
            }
        })
        .collect();
    Ok(EdgeProvenance {
        source: source.to_string(),
        target: target.to_string(),
        directed,
        weight: edge.weight,
        witnesses: rows,
        papers: papers.into_iter().collect(),
    })
}

/// Witnesses and papers of an undirected edge. Endpoints may be ids or names.
pub fn papers_for_edge(
    graph: &FosGraph,
    corpus: &Corpus,
    src: &str,
    dst: &str,
) -> Result<EdgeProvenance> {
    let unknown = || Error::UnknownEdge {
        src: src.to_string(),
        dst: dst.to_string(),
        suggestions: suggest(&graph.nodes, graph.edges.keys(), src, dst, false),
    };
    let (a, b) = match (resolve(&graph.nodes, src), resolve(&graph.nodes, dst)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(unknown()),
    };
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let edge = graph.edge(a, b).ok_or_else(unknown)?;
    let focal_only = graph.meta.focal != FocalRule::Off;
    let keep = |p: &str| !focal_only || corpus.paper(p).is_some_and(|p| p.focal);
    provenance(a, b, false, edge, keep, true)
}

/// Witnesses of a directed edge and the post-period papers behind it.
pub fn papers_for_temporal_edge(
    graph: &TemporalFosGraph,
    src: &str,
    dst: &str,
) -> Result<EdgeProvenance> {
    let unknown = || Error::UnknownEdge {
        src: src.to_string(),
        dst: dst.to_string(),
        suggestions: suggest(&graph.names, graph.edges.keys(), src, dst, true),
    };
    let (a, b) = match (resolve(&graph.names, src), resolve(&graph.names, dst)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(unknown()),
    };
    let edge = graph.edge(a, b).ok_or_else(unknown)?;
    provenance(a, b, true, edge, |_| true, false)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stopwords(BTreeSet<String>);

impl Default for Stopwords {
    fn default() -> Self {
        Self(DEFAULT_STOPWORDS.iter().map(|s| s.to_string()).collect())
    }
}

impl Stopwords {
    pub fn none() -> Self {
        Self(BTreeSet::new())
    }

    /// One word per line; blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Self {
        Self(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::to_lowercase)
                .collect(),
        )
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::parse(&text))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }
}

/// Lowercased alphanumeric runs of at least three characters.
pub fn tokenize(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| t.chars().count() >= MIN_TOKEN_CHARS)
        .map(str::to_lowercase)
}

fn paper_set<'a>(paper_ids: &'a [String], corpus: &Corpus) -> Result<BTreeSet<&'a str>> {
    paper_ids
        .iter()
        .map(|id| {
            corpus
                .paper(id)
                .map(|_| id.as_str())
                .ok_or_else(|| Error::UnknownPaper(id.clone()))
        })
        .collect()
}

fn ranked(counts: BTreeMap<String, usize>, top_n: Option<usize>) -> Vec<(String, usize)> {
    let mut out: Vec<(String, usize)> = counts.into_iter().collect();
    // BTreeMap order already breaks ties by term
    out.sort_by_key(|e| std::cmp::Reverse(e.1));
    out.truncate(top_n.unwrap_or(usize::MAX));
    out
}

/// Most frequent words across titles and abstracts of the given papers,
/// ranked by count then term. Duplicate ids count once.
pub fn keyword_frequencies(
    paper_ids: &[String],
    corpus: &Corpus,
    top_n: Option<usize>,
    stopwords: &Stopwords,
) -> Result<Vec<(String, usize)>> {
    let mut counts = BTreeMap::new();
    for id in paper_set(paper_ids, corpus)? {
        let paper = corpus.paper(id).expect("checked above");
        for text in [Some(&paper.title), paper.abstract_text.as_ref()]
            .into_iter()
            .flatten()
        {
            for token in tokenize(text) {
                if !stopwords.contains(&token) {
                    *counts.entry(token).or_insert(0) += 1;
                }
            }
        }
    }
    Ok(ranked(counts, top_n))
}

/// How often each field of `level` tags the given papers, ranked by count
/// then name. Entries are `(field name, count)`.
pub fn subfield_frequencies(
    paper_ids: &[String],
    corpus: &Corpus,
    level: u32,
) -> Result<Vec<(String, usize)>> {
    let present = corpus
        .papers()
        .iter()
        .flat_map(|p| &p.field_ids)
        .any(|f| corpus.field(f).is_some_and(|f| f.level == level));
    if !present {
        return Err(Error::LevelAbsent(level));
    }
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for id in paper_set(paper_ids, corpus)? {
        for f in &corpus.paper(id).expect("checked above").field_ids {
            let field = corpus.field(f).expect("paper fields are catalogued");
            if field.level == level {
                *counts.entry(field.name.clone()).or_insert(0) += 1;
            }
        }
    }
    Ok(ranked(counts, None))
}

impl EdgeProvenance {
    pub fn to_table(&self, corpus: &Corpus) -> String {
        let arrow = if self.directed { "->" } else { "--" };
        let mut out = format!(
            "{} {arrow} {} (weight {}, {} witnesses, {} papers)\n",
            corpus.field_name(&self.source),
            corpus.field_name(&self.target),
            self.weight,
            self.witnesses.len(),
            self.papers.len()
        );
        for w in &self.witnesses {
            out.push_str(&format!(
                "  {:<16} [{}] [{}]\n",
                w.author,
                w.source_papers.join(" "),
                w.target_papers.join(" ")
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{build_static, BuildConfig};
    use crate::corpus::{Author, FieldRef, IngestConfig, PaperRecord};

    fn field(id: &str, level: u32, parents: &[&str]) -> FieldRef {
        FieldRef {
            id: id.into(),
            name: id.to_uppercase(),
            level,
            parent_ids: parents.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn record(
        id: &str,
        title: &str,
        authors: &[&str],
        fields: Vec<FieldRef>,
        focal: bool,
    ) -> PaperRecord {
        PaperRecord {
            id: id.into(),
            title: title.into(),
            abstract_text: None,
            year: 2019,
            authors: authors
                .iter()
                .map(|a| Author {
                    id: a.to_string(),
                    name: None,
                })
                .collect(),
            fields,
            focal,
        }
    }

    fn corpus() -> Corpus {
        Corpus::from_records(
            vec![
                record(
                    "p1",
                    "graph graphs Graph",
                    &["a1"],
                    vec![field("x", 1, &[]), field("x2", 2, &["x"])],
                    true,
                ),
                record(
                    "p2",
                    "the graph of networks",
                    &["a1", "a2"],
                    vec![field("y", 1, &[])],
                    false,
                ),
                record("p3", "networks", &["a2"], vec![field("x", 1, &[])], true),
            ],
            &IngestConfig::default(),
        )
        .unwrap()
    }

    #[test]
    fn tokenizer_contract() {
        let c = corpus();
        let kw = keyword_frequencies(&["p1".into()], &c, None, &Stopwords::none()).unwrap();
        assert_eq!(
            kw,
            vec![("graph".to_string(), 2), ("graphs".to_string(), 1)]
        );
        assert!(keyword_frequencies(&[], &c, None, &Stopwords::default())
            .unwrap()
            .is_empty());
        // "of" is too short, "the" is a stopword
        let kw = keyword_frequencies(
            &["p2".into(), "p2".into()],
            &c,
            Some(5),
            &Stopwords::default(),
        )
        .unwrap();
        assert_eq!(
            kw,
            vec![("graph".to_string(), 1), ("networks".to_string(), 1)]
        );
        assert!(keyword_frequencies(&["nope".into()], &c, None, &Stopwords::none()).is_err());
    }

    #[test]
    fn provenance_of_weight_two_edge() {
        let c = corpus();
        let g = build_static(&c, &BuildConfig::default());
        let p = papers_for_edge(&g, &c, "y", "x").unwrap();
        assert_eq!((p.source.as_str(), p.target.as_str()), ("x", "y"));
        assert_eq!(p.weight, 2);
        assert_eq!(p.witnesses.len(), 2);
        assert_eq!(p.papers, vec!["p1", "p2", "p3"]);
    }

    #[test]
    fn unknown_edge_suggests_neighbours() {
        let c = corpus();
        let g = build_static(&c, &BuildConfig::default());
        match papers_for_edge(&g, &c, "x", "zz") {
            Err(Error::UnknownEdge { suggestions, .. }) => assert!(!suggestions.is_empty()),
            other => panic!("expected unknown edge, got {other:?}"),
        }
        let bare = build_static(
            &c,
            &BuildConfig {
                retain_witnesses: false,
                ..Default::default()
            },
        );
        assert!(matches!(
            papers_for_edge(&bare, &c, "x", "y"),
            Err(Error::WitnessesUnavailable)
        ));
    }

    #[test]
    fn subfields() {
        let c = corpus();
        let ids: Vec<String> = vec!["p1".into(), "p2".into()];
        assert_eq!(
            subfield_frequencies(&ids, &c, 2).unwrap(),
            vec![("X2".to_string(), 1)]
        );
        assert!(matches!(
            subfield_frequencies(&ids, &c, 3),
            Err(Error::LevelAbsent(3))
        ));
        let filtered = c.filter_fields(1);
        assert!(matches!(
            subfield_frequencies(&ids, &filtered, 2),
            Err(Error::LevelAbsent(2))
        ));
    }
}
