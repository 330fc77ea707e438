//! Independent oracles and fixtures shared by the integration tests.
//!
//! Nothing here calls into the code it checks beyond constructing inputs.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::{Path, PathBuf};

use fosnet::builder::FocalRule;
use fosnet::corpus::{Author, FieldRef, PaperRecord};
use fosnet::graph::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

const WORDS: &[&str] = &[
    "network",
    "graph",
    "flow",
    "reactor",
    "Reactor",
    "the",
    "and",
    "of",
    "field",
    "model",
    "data",
    "x1",
    "fusion",
    "Graph-based",
    "analysis",
    "über",
    "neutron",
    "a",
    "in",
    "ab",
];

pub fn sentence(rng: &mut ChaCha8Rng, max_words: usize) -> String {
    let n = rng.gen_range(0..=max_words);
    let seps = [" ", ", ", "; ", " (", ") ", "-", "/"];
    let mut s = String::new();
    for i in 0..n {
        if i > 0 {
            s.push_str(seps.choose(rng).unwrap());
        }
        s.push_str(WORDS.choose(rng).unwrap());
    }
    s
}

/// Random corpus with at most `max_papers` papers, `max_authors` authors and
/// `max_fields` level-1 fields. Every paper has at least one author and field.
pub fn random_records(
    rng: &mut ChaCha8Rng,
    max_papers: usize,
    max_authors: usize,
    max_fields: usize,
) -> Vec<PaperRecord> {
    let n_papers = rng.gen_range(1..=max_papers);
    let n_authors = rng.gen_range(1..=max_authors);
    let n_fields = rng.gen_range(1..=max_fields);
    let authors: Vec<String> = (0..n_authors).map(|a| format!("a{a:02}")).collect();
    let fields: Vec<String> = (0..n_fields).map(|f| format!("f{f:02}")).collect();
    (0..n_papers)
        .map(|p| {
            let na = rng.gen_range(1..=3.min(n_authors));
            let nf = rng.gen_range(1..=4.min(n_fields));
            PaperRecord {
                id: format!("p{p:03}"),
                title: sentence(rng, 6),
                abstract_text: rng.gen_bool(0.7).then(|| sentence(rng, 12)),
                year: rng.gen_range(2014..=2020),
                authors: authors
                    .choose_multiple(rng, na)
                    .map(|a| Author {
                        id: a.clone(),
                        name: None,
                    })
                    .collect(),
                fields: fields
                    .choose_multiple(rng, nf)
                    .map(|f| FieldRef {
                        id: f.clone(),
                        name: format!("Field {f}"),
                        level: 1,
                        parent_ids: Vec::new(),
                    })
                    .collect(),
                focal: rng.gen_bool(0.4),
            }
        })
        .collect()
}

pub fn random_corpus_records(seed: u64) -> Vec<PaperRecord> {
    random_records(&mut ChaCha8Rng::seed_from_u64(seed), 50, 30, 20)
}

/// `(weight, author -> (papers with x, papers with y))` per edge `x < y`.
pub type OracleEdges =
    BTreeMap<(String, String), (u64, BTreeMap<String, (Vec<String>, Vec<String>)>)>;

fn sorted(v: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut v: Vec<String> = v.into_iter().collect();
    v.sort();
    v.dedup();
    v
}

/// Every field pair, every author, every paper: the static projection spelled
/// out without any indexing.
pub fn projection_oracle(records: &[PaperRecord], focal: FocalRule) -> OracleEdges {
    let fields = sorted(
        records
            .iter()
            .flat_map(|r| r.fields.iter().map(|f| f.id.clone())),
    );
    let authors = sorted(
        records
            .iter()
            .flat_map(|r| r.authors.iter().map(|a| a.id.clone())),
    );
    let mut out = OracleEdges::new();
    for (i, x) in fields.iter().enumerate() {
        for y in &fields[i + 1..] {
            for a in &authors {
                let papers_with = |f: &str| -> Vec<&PaperRecord> {
                    records
                        .iter()
                        .filter(|r| r.authors.iter().any(|au| &au.id == a))
                        .filter(|r| r.fields.iter().any(|fr| fr.id == f))
                        .collect()
                };
                let px = papers_with(x);
                let py = papers_with(y);
                if px.is_empty() || py.is_empty() {
                    continue;
                }
                let fx = px.iter().any(|r| r.focal);
                let fy = py.iter().any(|r| r.focal);
                let admitted = match focal {
                    FocalRule::Off => true,
                    FocalRule::Any => fx || fy,
                    FocalRule::Both => fx && fy,
                };
                if !admitted {
                    continue;
                }
                let entry = out.entry((x.clone(), y.clone())).or_default();
                entry.0 += 1;
                entry.1.insert(
                    a.clone(),
                    (
                        sorted(px.iter().map(|r| r.id.clone())),
                        sorted(py.iter().map(|r| r.id.clone())),
                    ),
                );
            }
        }
    }
    out
}

/// Which period a paper falls in under a split, as `(is_pre, is_post)`.
pub type PeriodFn = dyn Fn(&PaperRecord) -> (bool, bool);

/// Triple loop over pre field, post field and author.
pub fn temporal_oracle(records: &[PaperRecord], period: &PeriodFn) -> OracleEdges {
    let fields = sorted(
        records
            .iter()
            .flat_map(|r| r.fields.iter().map(|f| f.id.clone())),
    );
    let authors = sorted(
        records
            .iter()
            .flat_map(|r| r.authors.iter().map(|a| a.id.clone())),
    );
    let mut out = OracleEdges::new();
    for x in &fields {
        for y in &fields {
            for a in &authors {
                let by = |f: &str, pre: bool| -> Vec<String> {
                    sorted(
                        records
                            .iter()
                            .filter(|r| r.authors.iter().any(|au| &au.id == a))
                            .filter(|r| r.fields.iter().any(|fr| fr.id == f))
                            .filter(|r| if pre { period(r).0 } else { period(r).1 })
                            .map(|r| r.id.clone()),
                    )
                };
                let (before, after) = (by(x, true), by(y, false));
                if before.is_empty() || after.is_empty() {
                    continue;
                }
                let entry = out.entry((x.clone(), y.clone())).or_default();
                entry.0 += 1;
                entry.1.insert(a.clone(), (before, after));
            }
        }
    }
    out
}

/// Converts a library edge map into the oracle's shape.
pub fn as_oracle(edges: &BTreeMap<(String, String), fosnet::builder::FosEdge>) -> OracleEdges {
    edges
        .iter()
        .map(|(k, e)| {
            let w = e
                .witnesses
                .as_ref()
                .expect("witnesses retained")
                .iter()
                .map(|(a, w)| {
                    (
                        a.clone(),
                        (w.source_papers.clone(), w.target_papers.clone()),
                    )
                })
                .collect();
            (k.clone(), (e.weight, w))
        })
        .collect()
}

/// Modularity computed from the edge list with `m` undirected edges.
pub fn modularity_by_hand(graph: &Graph, part: &[usize], resolution: f64) -> f64 {
    let m = graph.edge_count() as f64;
    let k = part.iter().copied().max().map_or(0, |c| c + 1);
    let mut internal = vec![0.0; k];
    let mut degree = vec![0.0; k];
    for (u, v) in graph.edges() {
        if part[u] == part[v] {
            internal[part[u]] += 1.0;
        }
    }
    for u in 0..graph.node_count() {
        degree[part[u]] += graph.degree(u) as f64;
    }
    (0..k)
        .map(|c| internal[c] / m - resolution * (degree[c] / (2.0 * m)).powi(2))
        .sum()
}

/// Best modularity over every set partition, via restricted growth strings.
pub fn exhaustive_max_modularity(graph: &Graph, resolution: f64) -> (f64, Vec<usize>) {
    let n = graph.node_count();
    let mut best = (f64::NEG_INFINITY, Vec::new());
    let mut part = vec![0usize; n];
    fn rec(
        i: usize,
        max_used: usize,
        part: &mut Vec<usize>,
        graph: &Graph,
        resolution: f64,
        best: &mut (f64, Vec<usize>),
    ) {
        if i == part.len() {
            let q = modularity_by_hand(graph, part, resolution);
            if q > best.0 {
                *best = (q, part.clone());
            }
            return;
        }
        for c in 0..=max_used + 1 {
            part[i] = c;
            rec(i + 1, max_used.max(c), part, graph, resolution, best);
        }
    }
    if n == 0 {
        return (0.0, Vec::new());
    }
    rec(1, 0, &mut part, graph, resolution, &mut best);
    best
}

/// Whether two labelings induce the same partition.
pub fn same_partition(a: &[usize], b: &[usize]) -> bool {
    let mut ab = BTreeMap::new();
    let mut ba = BTreeMap::new();
    a.iter()
        .zip(b)
        .all(|(x, y)| *ab.entry(x).or_insert(y) == y && *ba.entry(y).or_insert(x) == x)
}

/// Every shortest path between every pair, enumerated explicitly.
fn all_shortest_paths(graph: &Graph, s: usize, t: usize) -> Vec<Vec<usize>> {
    let n = graph.node_count();
    let mut dist = vec![usize::MAX; n];
    dist[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &v in graph.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                q.push_back(v);
            }
        }
    }
    if dist[t] == usize::MAX {
        return Vec::new();
    }
    let mut paths = Vec::new();
    let mut stack = vec![vec![s]];
    while let Some(p) = stack.pop() {
        let u = *p.last().unwrap();
        if u == t {
            paths.push(p);
            continue;
        }
        for &v in graph.neighbors(u) {
            if dist[v] == dist[u] + 1 && dist[v] <= dist[t] {
                let mut q = p.clone();
                q.push(v);
                stack.push(q);
            }
        }
    }
    paths
}

/// Betweenness normalised by the number of unordered pairs of other nodes.
pub fn betweenness_by_paths(graph: &Graph) -> Vec<f64> {
    let n = graph.node_count();
    let mut b = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            let paths = all_shortest_paths(graph, s, t);
            if paths.is_empty() {
                continue;
            }
            let total = paths.len() as f64;
            for (v, bv) in b.iter_mut().enumerate() {
                if v == s || v == t {
                    continue;
                }
                let through = paths.iter().filter(|p| p.contains(&v)).count() as f64;
                *bv += through / total;
            }
        }
    }
    if n > 2 {
        let pairs = ((n - 1) * (n - 2)) as f64 / 2.0;
        b.iter_mut().for_each(|x| *x /= pairs);
    }
    b
}

/// Connected components as sorted node lists.
pub fn components(graph: &Graph) -> Vec<Vec<usize>> {
    let n = graph.node_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp: BTreeSet<usize> = BTreeSet::new();
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            comp.insert(u);
            for &v in graph.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        out.push(comp.into_iter().collect());
    }
    out
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new((0..n).map(|i| format!("v{i:02}")).collect(), edges).unwrap()
}

/// DTW written as the textbook recursion with memo-free branching.
pub fn naive_dtw(a: &[usize], b: &[usize]) -> f64 {
    fn cost(x: usize, y: usize) -> f64 {
        let (lo, hi) = (x.min(y) as f64, x.max(y) as f64);
        hi / lo - 1.0
    }
    fn go(a: &[usize], b: &[usize], i: usize, j: usize) -> f64 {
        // aligns a[..=i] with b[..=j]
        let c = cost(a[i], b[j]);
        match (i, j) {
            (0, 0) => c,
            (0, _) => c + go(a, b, 0, j - 1),
            (_, 0) => c + go(a, b, i - 1, 0),
            _ => {
                c + go(a, b, i - 1, j - 1)
                    .min(go(a, b, i - 1, j))
                    .min(go(a, b, i, j - 1))
            }
        }
    }
    match (a.is_empty(), b.is_empty()) {
        (true, true) => 0.0,
        (true, false) | (false, true) => f64::INFINITY,
        _ => go(a, b, a.len() - 1, b.len() - 1),
    }
}

/// Sorted degrees of the nodes exactly `k` hops from `u`, by repeated
/// frontier expansion.
pub fn ring(graph: &Graph, u: usize, k: usize) -> Vec<usize> {
    let mut seen: BTreeSet<usize> = BTreeSet::from([u]);
    let mut frontier: BTreeSet<usize> = BTreeSet::from([u]);
    for _ in 0..k {
        let next: BTreeSet<usize> = frontier
            .iter()
            .flat_map(|&x| graph.neighbors(x).iter().copied())
            .filter(|v| !seen.contains(v))
            .collect();
        seen.extend(&next);
        frontier = next;
    }
    let mut d: Vec<usize> = frontier.iter().map(|&v| graph.degree(v)).collect();
    d.sort_unstable();
    d
}

/// `f_k(u, v)` from the recursive definition; `None` past the shallower ring.
pub fn naive_structural_distance(graph: &Graph, u: usize, v: usize, k: usize) -> Option<f64> {
    let (ru, rv) = (ring(graph, u, k), ring(graph, v, k));
    if ru.is_empty() || rv.is_empty() {
        return None;
    }
    let here = naive_dtw(&ru, &rv);
    if k == 0 {
        Some(here)
    } else {
        naive_structural_distance(graph, u, v, k - 1).map(|prev| prev + here)
    }
}

/// Word counts over the given texts with a hand-rolled scanner.
pub fn word_count_oracle<'a>(
    texts: impl IntoIterator<Item = &'a str>,
    stop: &BTreeSet<String>,
) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for text in texts {
        let mut word = String::new();
        for c in text.chars().chain(std::iter::once(' ')) {
            if c.is_alphanumeric() {
                word.push(c);
                continue;
            }
            if word.chars().count() >= 3 {
                let w = word.to_lowercase();
                if !stop.contains(&w) {
                    *counts.entry(w).or_insert(0) += 1;
                }
            }
            word.clear();
        }
    }
    counts
}

/// Role table means in order: degree, betweenness, closeness, eigenvector.
pub type RoleMeans = [f64; 4];

/// Outcome of the three-part role-signature check.
#[derive(Debug)]
pub struct Signature {
    pub dominant_role: Option<usize>,
    pub broker_roles: Vec<usize>,
    pub leaf_roles: Vec<usize>,
}

impl Signature {
    pub fn holds(&self) -> bool {
        self.dominant_role.is_some() && !self.broker_roles.is_empty() && !self.leaf_roles.is_empty()
    }
}

/// * dominant: exactly one role attains the maximum of all four means;
/// * broker: a non-dominant role with positive mean betweenness that exceeds
///   the betweenness of some other non-dominant role whose mean eigenvector
///   is higher;
/// * leaf: mean degree exactly 1 and mean betweenness exactly 0.
pub fn role_signature(rows: &[RoleMeans]) -> Signature {
    let maxima: Vec<f64> = (0..4)
        .map(|j| rows.iter().map(|r| r[j]).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let dominant: Vec<usize> = (0..rows.len())
        .filter(|&i| (0..4).all(|j| rows[i][j] == maxima[j]))
        .collect();
    let dominant_role = (dominant.len() == 1).then(|| dominant[0]);
    let broker_roles = (0..rows.len())
        .filter(|&r| Some(r) != dominant_role && rows[r][1] > 0.0)
        .filter(|&r| {
            (0..rows.len()).any(|s| {
                s != r
                    && Some(s) != dominant_role
                    && rows[s][3] > rows[r][3]
                    && rows[s][1] < rows[r][1]
            })
        })
        .collect();
    let leaf_roles = (0..rows.len())
        .filter(|&r| rows[r][0] == 1.0 && rows[r][1] == 0.0)
        .collect();
    Signature {
        dominant_role,
        broker_roles,
        leaf_roles,
    }
}

pub fn mirrored_components() -> Graph {
    // an 8-node tree-with-cycle, copied with an offset of 8
    let base = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 0),
        (3, 4),
        (4, 5),
        (5, 6),
        (5, 7),
    ];
    let edges = base.iter().flat_map(|&(u, v)| [(u, v), (u + 8, v + 8)]);
    Graph::new((0..16).map(|i| format!("m{i:02}")).collect(), edges).unwrap()
}
