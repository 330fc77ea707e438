//! Paper metadata ingestion.
//!
//! A corpus is read from JSONL (one paper per line) and validated into an
//! immutable, id-sorted collection of papers, authors, and field definitions.
//! Besides the string-keyed records, the corpus keeps dense integer indices
//! (`paper -> authors`, `paper -> fields`, `author -> papers`) that the graph
//! builders iterate over.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A node of the field-of-study hierarchy. Level 0 is a discipline, level 1 a
/// sub-discipline; deeper levels are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRef {
    pub id: String,
    pub name: String,
    pub level: u32,
    #[serde(default, rename = "parents")]
    pub parent_ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Author {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

/// A validated paper. Author and field ids are sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Paper {
    pub id: String,
    pub title: String,
    pub abstract_text: Option<String>,
    pub year: i32,
    pub author_ids: Vec<String>,
    pub field_ids: Vec<String>,
    pub focal: bool,
}

/// One line of the JSONL input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperRecord {
    pub id: String,
    #[serde(default)]
    pub title: String,
    #[serde(default, rename = "abstract", skip_serializing_if = "Option::is_none")]
    pub abstract_text: Option<String>,
    pub year: i32,
    pub authors: Vec<Author>,
    pub fields: Vec<FieldRef>,
    #[serde(default)]
    pub focal: bool,
}

/// Lenient mirror of [`PaperRecord`] so that missing keys can be told apart
/// from type errors when reporting malformed lines.
#[derive(Deserialize)]
struct RawRecord {
    id: Option<String>,
    #[serde(default)]
    title: Option<String>,
    #[serde(default, rename = "abstract")]
    abstract_text: Option<String>,
    year: Option<i32>,
    authors: Option<Vec<Author>>,
    fields: Option<Vec<FieldRef>>,
    #[serde(default)]
    focal: Option<bool>,
}

impl RawRecord {
    fn into_record(self) -> std::result::Result<PaperRecord, String> {
        let id = match self.id {
            Some(id) if !id.is_empty() => id,
            Some(_) => return Err("empty paper id".into()),
            None => return Err("missing `id`".into()),
        };
        let year = self.year.ok_or("missing `year`")?;
        let authors = self.authors.ok_or("missing `authors`")?;
        let fields = self.fields.ok_or("missing `fields`")?;
        if authors.iter().any(|a| a.id.is_empty()) {
            return Err("author with empty id".into());
        }
        if fields.iter().any(|f| f.id.is_empty()) {
            return Err("field with empty id".into());
        }
        Ok(PaperRecord {
            id,
            title: self.title.unwrap_or_default(),
            abstract_text: self.abstract_text,
            year,
            authors,
            fields,
            focal: self.focal.unwrap_or(false),
        })
    }
}

/// Ingestion options. Also accepted as a JSON file by the CLI.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct IngestConfig {
    /// Malformed lines abort the load instead of being skipped.
    pub strict: bool,
    /// Restrict paper fields to this hierarchy level after loading.
    pub level: Option<u32>,
    /// Inclusive year range; papers outside it are dropped.
    pub window: Option<(i32, i32)>,
}

/// Counters describing what ingestion discarded.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestStats {
    pub lines: usize,
    pub skipped_malformed: usize,
    pub dropped_empty: usize,
    pub dropped_out_of_window: usize,
    pub dropped_by_level: usize,
}

/// Which papers of an author a query looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subset {
    All,
    Focal,
    /// Inclusive year range.
    Window(i32, i32),
}

impl Subset {
    fn admits(&self, paper: &Paper) -> bool {
        match *self {
            Subset::All => true,
            Subset::Focal => paper.focal,
            Subset::Window(lo, hi) => paper.year >= lo && paper.year <= hi,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Corpus {
    papers: Vec<Paper>,
    authors: Vec<Author>,
    catalogue: Vec<FieldRef>,
    window: Option<(i32, i32)>,
    stats: IngestStats,

    paper_lookup: HashMap<String, usize>,
    author_lookup: HashMap<String, usize>,
    field_lookup: HashMap<String, usize>,
    paper_authors: Vec<Vec<usize>>,
    paper_fields: Vec<Vec<usize>>,
    author_papers: Vec<Vec<usize>>,
}

impl PartialEq for Corpus {
    fn eq(&self, other: &Self) -> bool {
        self.papers == other.papers
            && self.authors == other.authors
            && self.catalogue == other.catalogue
            && self.window == other.window
    }
}

/// Reads a JSONL corpus.
pub fn load_corpus(path: impl AsRef<Path>, config: &IngestConfig) -> Result<Corpus> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut records = Vec::new();
    let mut stats = IngestStats::default();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        stats.lines += 1;
        let parsed = serde_json::from_str::<RawRecord>(line)
            .map_err(|e| e.to_string())
            .and_then(RawRecord::into_record);
        match parsed {
            Ok(record) => records.push(record),
            Err(message) if config.strict => {
                return Err(Error::MalformedRecord {
                    line: i + 1,
                    message,
                })
            }
            Err(_) => stats.skipped_malformed += 1,
        }
    }
    Corpus::build(records, config, stats)
}

impl Corpus {
    pub fn empty() -> Self {
        Self::assemble(
            Vec::new(),
            Vec::new(),
            Vec::new(),
            None,
            IngestStats::default(),
        )
    }

    /// Validates in-memory records exactly as [`load_corpus`] would.
    pub fn from_records(
        records: impl IntoIterator<Item = PaperRecord>,
        config: &IngestConfig,
    ) -> Result<Self> {
        let records: Vec<_> = records.into_iter().collect();
        let stats = IngestStats {
            lines: records.len(),
            ..Default::default()
        };
        Self::build(records, config, stats)
    }

    fn build(
        records: Vec<PaperRecord>,
        config: &IngestConfig,
        mut stats: IngestStats,
    ) -> Result<Self> {
        if let Some((lo, hi)) = config.window {
            if lo > hi {
                return Err(Error::InvalidParameter(format!(
                    "window {lo}..{hi} is empty"
                )));
            }
        }

        let mut seen = BTreeSet::new();
        for r in &records {
            if !seen.insert(r.id.as_str()) {
                return Err(Error::DuplicatePaper(r.id.clone()));
            }
        }

        // Field definitions are merged across every record, including ones
        // dropped below, so the hierarchy stays complete.
        let mut catalogue: BTreeMap<String, FieldRef> = BTreeMap::new();
        let mut author_names: BTreeMap<String, Option<String>> = BTreeMap::new();
        for r in &records {
            for f in &r.fields {
                match catalogue.get_mut(&f.id) {
                    None => {
                        let mut f = f.clone();
                        f.parent_ids.sort();
                        f.parent_ids.dedup();
                        catalogue.insert(f.id.clone(), f);
                    }
                    Some(existing) => {
                        if existing.name != f.name || existing.level != f.level {
                            return Err(Error::ConflictingField(f.id.clone()));
                        }
                        existing.parent_ids.extend(f.parent_ids.iter().cloned());
                        existing.parent_ids.sort();
                        existing.parent_ids.dedup();
                    }
                }
            }
        }
        check_acyclic(&catalogue)?;

        let mut papers = Vec::with_capacity(records.len());
        for r in records {
            if let Some((lo, hi)) = config.window {
                if r.year < lo || r.year > hi {
                    stats.dropped_out_of_window += 1;
                    continue;
                }
            }
            let mut author_ids: Vec<String> = r.authors.iter().map(|a| a.id.clone()).collect();
            author_ids.sort();
            author_ids.dedup();
            let mut field_ids: Vec<String> = r.fields.iter().map(|f| f.id.clone()).collect();
            field_ids.sort();
            field_ids.dedup();
            if author_ids.is_empty() || field_ids.is_empty() {
                stats.dropped_empty += 1;
                continue;
            }
            for a in r.authors {
                let slot = author_names.entry(a.id).or_insert(None);
                if let Some(name) = a.name {
                    match slot {
                        Some(current) if *current <= name => {}
                        _ => *slot = Some(name),
                    }
                }
            }
            papers.push(Paper {
                id: r.id,
                title: r.title,
                abstract_text: r.abstract_text,
                year: r.year,
                author_ids,
                field_ids,
                focal: r.focal,
            });
        }
        papers.sort_by(|a, b| a.id.cmp(&b.id));

        let window = config.window.or_else(|| observed_window(&papers));
        let authors = author_names
            .into_iter()
            .map(|(id, name)| Author { id, name })
            .collect();
        let corpus = Self::assemble(
            papers,
            authors,
            catalogue.into_values().collect(),
            window,
            stats,
        );
        match config.level {
            Some(level) => Ok(corpus.filter_fields(level)),
            None => Ok(corpus),
        }
    }

    fn assemble(
        papers: Vec<Paper>,
        authors: Vec<Author>,
        catalogue: Vec<FieldRef>,
        window: Option<(i32, i32)>,
        stats: IngestStats,
    ) -> Self {
        let paper_lookup: HashMap<_, _> = papers
            .iter()
            .enumerate()
            .map(|(i, p)| (p.id.clone(), i))
            .collect();
        let author_lookup: HashMap<_, _> = authors
            .iter()
            .enumerate()
            .map(|(i, a)| (a.id.clone(), i))
            .collect();
        let field_lookup: HashMap<_, _> = catalogue
            .iter()
            .enumerate()
            .map(|(i, f)| (f.id.clone(), i))
            .collect();
        let paper_authors: Vec<Vec<usize>> = papers
            .iter()
            .map(|p| p.author_ids.iter().map(|a| author_lookup[a]).collect())
            .collect();
        let paper_fields: Vec<Vec<usize>> = papers
            .iter()
            .map(|p| p.field_ids.iter().map(|f| field_lookup[f]).collect())
            .collect();
        let mut author_papers = vec![Vec::new(); authors.len()];
        for (p, authors_of) in paper_authors.iter().enumerate() {
            for &a in authors_of {
                author_papers[a].push(p);
            }
        }
        Self {
            papers,
            authors,
            catalogue,
            window,
            stats,
            paper_lookup,
            author_lookup,
            field_lookup,
            paper_authors,
            paper_fields,
            author_papers,
        }
    }

    /// Restricts every paper to fields at exactly `level`. Papers left without
    /// fields are dropped (counted in `stats().dropped_by_level`), and authors
    /// left without papers disappear from the author index.
    pub fn filter_fields(&self, level: u32) -> Corpus {
        let mut stats = self.stats.clone();
        let mut papers = Vec::with_capacity(self.papers.len());
        for (p, paper) in self.papers.iter().enumerate() {
            let field_ids: Vec<String> = self.paper_fields[p]
                .iter()
                .filter(|&&f| self.catalogue[f].level == level)
                .map(|&f| self.catalogue[f].id.clone())
                .collect();
            if field_ids.is_empty() {
                stats.dropped_by_level += 1;
                continue;
            }
            papers.push(Paper {
                field_ids,
                ..paper.clone()
            });
        }
        let used: BTreeSet<&str> = papers
            .iter()
            .flat_map(|p| p.author_ids.iter().map(String::as_str))
            .collect();
        let authors = self
            .authors
            .iter()
            .filter(|a| used.contains(a.id.as_str()))
            .cloned()
            .collect();
        Self::assemble(papers, authors, self.catalogue.clone(), self.window, stats)
    }

    pub fn papers(&self) -> &[Paper] {
        &self.papers
    }

    pub fn authors(&self) -> &[Author] {
        &self.authors
    }

    /// Every field definition encountered while loading, sorted by id.
    pub fn catalogue(&self) -> &[FieldRef] {
        &self.catalogue
    }

    /// Ids of fields tagged on at least one paper, sorted.
    pub fn field_universe(&self) -> Vec<&str> {
        let mut used = vec![false; self.catalogue.len()];
        for fields in &self.paper_fields {
            for &f in fields {
                used[f] = true;
            }
        }
        self.catalogue
            .iter()
            .zip(used)
            .filter(|(_, u)| *u)
            .map(|(f, _)| f.id.as_str())
            .collect()
    }

    pub fn window(&self) -> Option<(i32, i32)> {
        self.window
    }

    pub fn stats(&self) -> &IngestStats {
        &self.stats
    }

    pub fn paper(&self, id: &str) -> Option<&Paper> {
        self.paper_lookup.get(id).map(|&i| &self.papers[i])
    }

    pub fn field(&self, id: &str) -> Option<&FieldRef> {
        self.field_lookup.get(id).map(|&i| &self.catalogue[i])
    }

    pub fn author(&self, id: &str) -> Option<&Author> {
        self.author_lookup.get(id).map(|&i| &self.authors[i])
    }

    /// Display name of a field, falling back to its id.
    pub fn field_name<'a>(&'a self, id: &'a str) -> &'a str {
        self.field(id).map(|f| f.name.as_str()).unwrap_or(id)
    }

    pub(crate) fn author_papers_idx(&self, author: usize) -> &[usize] {
        &self.author_papers[author]
    }

    /// All (paper, field) facts for one author within `subset`. The author
    /// has published in field `n` iff some pair carries `n`.
    pub fn author_publications(
        &self,
        author_id: &str,
        subset: Subset,
    ) -> Result<BTreeSet<(String, String)>> {
        let &a = self
            .author_lookup
            .get(author_id)
            .ok_or_else(|| Error::UnknownAuthor(author_id.to_string()))?;
        let mut out = BTreeSet::new();
        for &p in &self.author_papers[a] {
            let paper = &self.papers[p];
            if subset.admits(paper) {
                for f in &paper.field_ids {
                    out.insert((paper.id.clone(), f.clone()));
                }
            }
        }
        Ok(out)
    }

    /// Whether `field_id` is tagged on at least one focal paper.
    pub fn field_in_focal(&self, field_id: &str) -> bool {
        self.papers
            .iter()
            .any(|p| p.focal && p.field_ids.iter().any(|f| f == field_id))
    }

    /// Level-0 ancestors of a field, or the field itself when it is a
    /// discipline. Parents missing from the catalogue are ignored.
    pub fn disciplines_of(&self, field_id: &str) -> Vec<&FieldRef> {
        let Some(&start) = self.field_lookup.get(field_id) else {
            return Vec::new();
        };
        let mut found = BTreeSet::new();
        let mut visited = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(f) = stack.pop() {
            if !visited.insert(f) {
                continue;
            }
            let field = &self.catalogue[f];
            if field.level == 0 {
                found.insert(f);
                continue;
            }
            stack.extend(
                field
                    .parent_ids
                    .iter()
                    .filter_map(|p| self.field_lookup.get(p).copied()),
            );
        }
        found.into_iter().map(|f| &self.catalogue[f]).collect()
    }

    /// Normalised records: papers, authors, and fields sorted by id.
    pub fn to_records(&self) -> Vec<PaperRecord> {
        self.papers
            .iter()
            .enumerate()
            .map(|(p, paper)| PaperRecord {
                id: paper.id.clone(),
                title: paper.title.clone(),
                abstract_text: paper.abstract_text.clone(),
                year: paper.year,
                authors: self.paper_authors[p]
                    .iter()
                    .map(|&a| self.authors[a].clone())
                    .collect(),
                fields: self.paper_fields[p]
                    .iter()
                    .map(|&f| self.catalogue[f].clone())
                    .collect(),
                focal: paper.focal,
            })
            .collect()
    }

    pub fn write_jsonl(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut out = Vec::new();
        write_records(&mut out, &self.to_records())?;
        fs::write(path, out).map_err(|e| Error::io(path, e))
    }
}

/// Serialises records as JSONL.
pub fn write_records(out: &mut impl Write, records: &[PaperRecord]) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut *out, r)?;
        out.write_all(b"\n").map_err(|e| Error::io("<buffer>", e))?;
    }
    Ok(())
}

fn observed_window(papers: &[Paper]) -> Option<(i32, i32)> {
    let lo = papers.iter().map(|p| p.year).min()?;
    let hi = papers.iter().map(|p| p.year).max()?;
    Some((lo, hi))
}

fn check_acyclic(catalogue: &BTreeMap<String, FieldRef>) -> Result<()> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Fresh,
        Active,
        Done,
    }
    let ids: Vec<&String> = catalogue.keys().collect();
    let index: HashMap<&str, usize> = ids
        .iter()
        .enumerate()
        .map(|(i, id)| (id.as_str(), i))
        .collect();
    let parents: Vec<Vec<usize>> = catalogue
        .values()
        .map(|f| {
            f.parent_ids
                .iter()
                .filter_map(|p| index.get(p.as_str()).copied())
                .collect()
        })
        .collect();
    let mut mark = vec![Mark::Fresh; ids.len()];
    for root in 0..ids.len() {
        if mark[root] != Mark::Fresh {
            continue;
        }
        // iterative DFS: (node, next parent slot)
        let mut stack = vec![(root, 0usize)];
        mark[root] = Mark::Active;
        while let Some(&mut (node, ref mut slot)) = stack.last_mut() {
            if let Some(&next) = parents[node].get(*slot) {
                *slot += 1;
                match mark[next] {
                    Mark::Active => return Err(Error::FieldCycle(ids[next].clone())),
                    Mark::Fresh => {
                        mark[next] = Mark::Active;
                        stack.push((next, 0));
                    }
                    Mark::Done => {}
                }
            } else {
                mark[node] = Mark::Done;
                stack.pop();
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn field(id: &str, level: u32, parents: &[&str]) -> FieldRef {
        FieldRef {
            id: id.into(),
            name: id.to_uppercase(),
            level,
            parent_ids: parents.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn record(id: &str, authors: &[&str], fields: Vec<FieldRef>, focal: bool) -> PaperRecord {
        PaperRecord {
            id: id.into(),
            title: format!("title {id}"),
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

    #[test]
    fn empty_file_gives_empty_corpus() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.jsonl");
        fs::write(&path, "").unwrap();
        let c = load_corpus(&path, &IngestConfig::default()).unwrap();
        assert!(c.papers().is_empty());
        assert!(c.authors().is_empty());
        assert_eq!(c.window(), None);
    }

    #[test]
    fn missing_fields_key_is_skipped_unless_strict() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        fs::write(
            &path,
            concat!(
                r#"{"id":"p1","title":"t","year":2019,"authors":[{"id":"a"}],"fields":[{"id":"x","name":"X","level":0,"parents":[]}],"focal":true}"#,
                "\n",
                r#"{"id":"p2","title":"t","year":2019,"authors":[{"id":"a"}],"focal":true}"#,
                "\n"
            ),
        )
        .unwrap();
        let c = load_corpus(&path, &IngestConfig::default()).unwrap();
        assert_eq!(c.papers().len(), 1);
        assert_eq!(c.stats().skipped_malformed, 1);

        let strict = IngestConfig {
            strict: true,
            ..Default::default()
        };
        match load_corpus(&path, &strict) {
            Err(Error::MalformedRecord { line: 2, .. }) => {}
            other => panic!("expected malformed line 2, got {other:?}"),
        }
    }

    #[test]
    fn unreadable_file_is_an_io_error() {
        let err = load_corpus("/nonexistent/corpus.jsonl", &IngestConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    #[test]
    fn duplicate_ids_are_fatal() {
        let recs = vec![
            record("p", &["a"], vec![field("x", 0, &[])], false),
            record("p", &["b"], vec![field("y", 0, &[])], false),
        ];
        assert!(matches!(
            Corpus::from_records(recs, &IngestConfig::default()),
            Err(Error::DuplicatePaper(id)) if id == "p"
        ));
    }

    #[test]
    fn empty_author_or_field_lists_are_dropped_and_counted() {
        let recs = vec![
            record("p1", &[], vec![field("x", 0, &[])], false),
            record("p2", &["a"], vec![], false),
            record("p3", &["a"], vec![field("x", 0, &[])], false),
        ];
        let c = Corpus::from_records(recs, &IngestConfig::default()).unwrap();
        assert_eq!(c.papers().len(), 1);
        assert_eq!(c.stats().dropped_empty, 2);
    }

    #[test]
    fn window_drops_out_of_range_papers() {
        let mut old = record("old", &["a"], vec![field("x", 0, &[])], false);
        old.year = 2010;
        let recs = vec![old, record("new", &["a"], vec![field("x", 0, &[])], false)];
        let c = Corpus::from_records(
            recs,
            &IngestConfig {
                window: Some((2016, 2020)),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(c.papers().len(), 1);
        assert_eq!(c.stats().dropped_out_of_window, 1);
        assert_eq!(c.window(), Some((2016, 2020)));
    }

    #[test]
    fn parent_cycles_are_rejected() {
        let recs = vec![record(
            "p",
            &["a"],
            vec![field("x", 1, &["y"]), field("y", 1, &["x"])],
            false,
        )];
        assert!(matches!(
            Corpus::from_records(recs, &IngestConfig::default()),
            Err(Error::FieldCycle(_))
        ));
    }

    #[test]
    fn conflicting_field_definitions_are_rejected() {
        let mut other = field("x", 0, &[]);
        other.name = "Other".into();
        let recs = vec![
            record("p1", &["a"], vec![field("x", 0, &[])], false),
            record("p2", &["a"], vec![other], false),
        ];
        assert!(matches!(
            Corpus::from_records(recs, &IngestConfig::default()),
            Err(Error::ConflictingField(_))
        ));
    }

    #[test]
    fn filter_fields_keeps_only_requested_level() {
        let recs = vec![record(
            "p",
            &["a"],
            vec![field("bio", 0, &[]), field("gen", 1, &["bio"])],
            false,
        )];
        let c = Corpus::from_records(recs, &IngestConfig::default()).unwrap();
        let l1 = c.filter_fields(1);
        assert_eq!(l1.papers()[0].field_ids, vec!["gen".to_string()]);
        assert_eq!(l1.field_universe(), vec!["gen"]);
    }

    #[test]
    fn filter_fields_drops_papers_without_matching_level() {
        let recs = vec![
            record("p1", &["a"], vec![field("x", 0, &[])], false),
            record("p2", &["b"], vec![field("y", 0, &[])], false),
        ];
        let c = Corpus::from_records(recs, &IngestConfig::default()).unwrap();
        let l1 = c.filter_fields(1);
        assert!(l1.papers().is_empty());
        assert!(l1.authors().is_empty());
        assert_eq!(l1.stats().dropped_by_level, 2);
    }

    #[test]
    fn author_publications_by_subset() {
        let mut bg = record("p0", &["a"], vec![field("z", 0, &[])], false);
        bg.year = 2017;
        let recs = vec![
            bg,
            record(
                "p1",
                &["a", "b"],
                vec![field("x", 0, &[]), field("y", 0, &[])],
                true,
            ),
        ];
        let c = Corpus::from_records(recs, &IngestConfig::default()).unwrap();
        let focal = c.author_publications("a", Subset::Focal).unwrap();
        let expected: BTreeSet<_> = [("p1", "x"), ("p1", "y")]
            .iter()
            .map(|(p, f)| (p.to_string(), f.to_string()))
            .collect();
        assert_eq!(focal, expected);
        assert!(c
            .author_publications("b", Subset::Window(2016, 2018))
            .unwrap()
            .is_empty());
        assert_eq!(
            c.author_publications("a", Subset::Window(2016, 2018))
                .unwrap()
                .len(),
            1
        );
        assert!(matches!(
            c.author_publications("nobody", Subset::All),
            Err(Error::UnknownAuthor(_))
        ));
    }

    #[test]
    fn disciplines_follow_multiple_parents() {
        let recs = vec![record(
            "p",
            &["a"],
            vec![
                field("chem", 0, &[]),
                field("bio", 0, &[]),
                field("biochem", 1, &["chem", "bio"]),
                field("enzymology", 2, &["biochem"]),
            ],
            false,
        )];
        let c = Corpus::from_records(recs, &IngestConfig::default()).unwrap();
        let ds: Vec<&str> = c
            .disciplines_of("enzymology")
            .iter()
            .map(|f| f.id.as_str())
            .collect();
        assert_eq!(ds, vec!["bio", "chem"]);
        let own: Vec<&str> = c
            .disciplines_of("bio")
            .iter()
            .map(|f| f.id.as_str())
            .collect();
        assert_eq!(own, vec!["bio"]);
    }
}
