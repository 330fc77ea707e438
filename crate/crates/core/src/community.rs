//! Louvain modularity optimisation and per-community summaries.
//!
//! Modularity with resolution `γ` is
//! `Q = Σ_c [ e_c / m − γ (d_c / 2m)² ]`, where `e_c` is the edge weight
//! inside community `c`, `d_c` the total degree of its members, and `m` the
//! total edge weight.

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_RESOLUTION: f64 = 1.0;

/// Weighted graph with explicit self-loop mass, used between aggregation levels.
#[derive(Debug, Clone)]
struct WeightedGraph {
    adjacency: Vec<Vec<(usize, f64)>>,
    self_loops: Vec<f64>,
    degree: Vec<f64>,
    total: f64,
}

impl WeightedGraph {
    fn from_graph(graph: &Graph) -> Self {
        let n = graph.node_count();
        let adjacency: Vec<Vec<(usize, f64)>> = (0..n)
            .map(|u| graph.neighbors(u).iter().map(|&v| (v, 1.0)).collect())
            .collect();
        let degree = adjacency.iter().map(|ns| ns.len() as f64).collect();
        Self {
            adjacency,
            self_loops: vec![0.0; n],
            degree,
            total: graph.edge_count() as f64,
        }
    }

    fn len(&self) -> usize {
        self.adjacency.len()
    }

    /// Collapses each community into one node.
    fn aggregate(&self, community: &[usize], count: usize) -> Self {
        let mut loops = vec![0.0; count];
        let mut links: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); count];
        for u in 0..self.len() {
            let cu = community[u];
            loops[cu] += self.self_loops[u];
            for &(v, w) in &self.adjacency[u] {
                let cv = community[v];
                if cu == cv {
                    // internal edges are seen from both ends
                    loops[cu] += w / 2.0;
                } else {
                    *links[cu].entry(cv).or_insert(0.0) += w;
                }
            }
        }
        let adjacency: Vec<Vec<(usize, f64)>> =
            links.into_iter().map(|m| m.into_iter().collect()).collect();
        let degree = adjacency
            .iter()
            .zip(&loops)
            .map(|(ns, l)| ns.iter().map(|(_, w)| w).sum::<f64>() + 2.0 * l)
            .collect();
        Self {
            adjacency,
            self_loops: loops,
            degree,
            total: self.total,
        }
    }
}

/// Modularity of a partition of an unweighted graph.
pub fn modularity(graph: &Graph, community: &[usize], resolution: f64) -> f64 {
    let m = graph.edge_count() as f64;
    if m == 0.0 {
        return 0.0;
    }
    let k = community.iter().copied().max().map_or(0, |c| c + 1);
    let mut internal = vec![0.0; k];
    let mut degree = vec![0.0; k];
    for u in 0..graph.node_count() {
        degree[community[u]] += graph.degree(u) as f64;
    }
    for (u, v) in graph.edges() {
        if community[u] == community[v] {
            internal[community[u]] += 1.0;
        }
    }
    internal
        .iter()
        .zip(&degree)
        .map(|(e, d)| e / m - resolution * (d / (2.0 * m)).powi(2))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityAssignment {
    /// Node labels in graph order.
    pub nodes: Vec<String>,
    /// `community[i]` is the community of `nodes[i]`; ids are dense and
    /// ordered by descending size.
    pub community: Vec<usize>,
    pub modularity: f64,
    pub resolution: f64,
    pub seed: u64,
    /// Smallest community size that is reported as a community.
    pub min_size: usize,
    /// Members of communities smaller than `min_size`.
    pub unassigned: Vec<String>,
    /// Modularity after each aggregation level, for inspection.
    pub level_modularity: Vec<f64>,
}

impl CommunityAssignment {
    pub fn community_count(&self) -> usize {
        self.community.iter().copied().max().map_or(0, |c| c + 1)
    }

    pub fn members(&self, community: usize) -> Vec<usize> {
        (0..self.community.len())
            .filter(|&i| self.community[i] == community)
            .collect()
    }

    pub fn of(&self, node: &str) -> Option<usize> {
        self.nodes
            .iter()
            .position(|n| n == node)
            .map(|i| self.community[i])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LouvainConfig {
    pub resolution: f64,
    pub seed: u64,
    pub min_size: usize,
}

impl Default for LouvainConfig {
    fn default() -> Self {
        Self {
            resolution: DEFAULT_RESOLUTION,
            seed: DEFAULT_SEED,
            min_size: 2,
        }
    }
}

/// One local-moving phase. Returns the (dense) community of each node and
/// whether anything moved.
fn local_moving(g: &WeightedGraph, resolution: f64, rng: &mut ChaCha8Rng) -> (Vec<usize>, bool) {
    let n = g.len();
    let two_m = 2.0 * g.total;
    let mut community: Vec<usize> = (0..n).collect();
    let mut tot: Vec<f64> = g.degree.clone();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);

    let mut moved_any = false;
    loop {
        let mut moved = false;
        for &u in &order {
            let cu = community[u];
            let ku = g.degree[u];
            let mut links: BTreeMap<usize, f64> = BTreeMap::new();
            for &(v, w) in &g.adjacency[u] {
                *links.entry(community[v]).or_insert(0.0) += w;
            }
            tot[cu] -= ku;
            let gain = |c: usize, k_in: f64| k_in - resolution * tot[c] * ku / two_m;
            let stay = gain(cu, links.get(&cu).copied().unwrap_or(0.0));
            let mut best = cu;
            let mut best_gain = stay;
            // ascending ids: among equal gains the lowest id wins, and a tie
            // with staying put is not a move
            for (&c, &k_in) in &links {
                if c == cu {
                    continue;
                }
                let g_c = gain(c, k_in);
                if g_c > best_gain + 1e-12 {
                    best = c;
                    best_gain = g_c;
                }
            }
            tot[best] += ku;
            if best != cu {
                community[u] = best;
                moved = true;
                moved_any = true;
            }
        }
        if !moved {
            break;
        }
    }
    (renumber(&community).0, moved_any)
}

/// Maps arbitrary labels to dense ids in order of first appearance.
fn renumber(labels: &[usize]) -> (Vec<usize>, usize) {
    let mut map = HashMap::new();
    let dense = labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect();
    (dense, map.len())
}

/// Standard two-phase Louvain. Edge weights are ignored (all 1).
pub fn louvain(graph: &Graph, config: &LouvainConfig) -> Result<CommunityAssignment> {
    if graph.node_count() == 0 {
        return Err(Error::Degenerate("empty graph".into()));
    }
    if graph.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    if !(config.resolution.is_finite() && config.resolution > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "resolution must be > 0, got {}",
            config.resolution
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut level = WeightedGraph::from_graph(graph);
    let mut membership: Vec<usize> = (0..graph.node_count()).collect();
    let mut level_modularity = vec![modularity(graph, &membership, config.resolution)];

    loop {
        let (community, moved) = local_moving(&level, config.resolution, &mut rng);
        if !moved {
            break;
        }
        let count = community.iter().max().unwrap() + 1;
        for m in membership.iter_mut() {
            *m = community[*m];
        }
        level_modularity.push(modularity(graph, &membership, config.resolution));
        if count == level.len() {
            break;
        }
        level = level.aggregate(&community, count);
    }

    let community = order_by_size(&membership);
    let sizes = community_sizes(&community);
    let unassigned = (0..community.len())
        .filter(|&i| sizes[community[i]] < config.min_size)
        .map(|i| graph.label(i).to_string())
        .collect();
    Ok(CommunityAssignment {
        nodes: graph.labels().to_vec(),
        modularity: modularity(graph, &community, config.resolution),
        community,
        resolution: config.resolution,
        seed: config.seed,
        min_size: config.min_size,
        unassigned,
        level_modularity,
    })
}

fn community_sizes(community: &[usize]) -> Vec<usize> {
    let k = community.iter().copied().max().map_or(0, |c| c + 1);
    let mut sizes = vec![0; k];
    for &c in community {
        sizes[c] += 1;
    }
    sizes
}

/// Relabels so that id 0 is the largest community; ties by smallest member.
fn order_by_size(labels: &[usize]) -> Vec<usize> {
    let (dense, k) = renumber(labels);
    let sizes = community_sizes(&dense);
    // renumber() assigns ids by first appearance, so id order == smallest member order
    let mut ranked: Vec<usize> = (0..k).collect();
    ranked.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]).then(a.cmp(&b)));
    let mut new_id = vec![0; k];
    for (rank, &c) in ranked.iter().enumerate() {
        new_id[c] = rank;
    }
    dense.iter().map(|&c| new_id[c]).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisciplineShare {
    pub discipline: String,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityRow {
    pub community: usize,
    pub size: usize,
    pub density: f64,
    /// Up to three members with the highest degree inside the community.
    pub most_central: Vec<String>,
    pub disciplines: Vec<DisciplineShare>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunitySummary {
    /// Communities with at least `min_size` members.
    pub rows: Vec<CommunityRow>,
    pub unassigned: Vec<String>,
    pub discipline_cutoff: f64,
    pub modularity: f64,
    pub resolution: f64,
    pub seed: u64,
}

/// Size, density `2e/(s(s-1))`, top members by within-community degree
/// (ties by name), and the share of members falling under each level-0
/// discipline, listed when at least `discipline_cutoff`.
pub fn summarize_communities(
    assignment: &CommunityAssignment,
    graph: &Graph,
    corpus: &Corpus,
    discipline_cutoff: f64,
) -> CommunitySummary {
    let mut rows = Vec::new();
    for c in 0..assignment.community_count() {
        let members = assignment.members(c);
        let size = members.len();
        if size < assignment.min_size {
            continue;
        }
        let sub = graph.induced(&members);
        let density = if size >= 2 {
            2.0 * sub.edge_count() as f64 / (size * (size - 1)) as f64
        } else {
            0.0
        };
        let mut ranked: Vec<(usize, &str, &str)> = (0..size)
            .map(|i| (sub.degree(i), corpus.field_name(sub.label(i)), sub.label(i)))
            .collect();
        ranked.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(b.1)));
        let most_central = ranked.iter().take(3).map(|r| r.1.to_string()).collect();

        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        for i in 0..size {
            for d in corpus.disciplines_of(sub.label(i)) {
                *counts.entry(d.name.clone()).or_insert(0) += 1;
            }
        }
        let mut disciplines: Vec<DisciplineShare> = counts
            .into_iter()
            .map(|(discipline, n)| DisciplineShare {
                discipline,
                fraction: n as f64 / size as f64,
            })
            .filter(|d| d.fraction >= discipline_cutoff)
            .collect();
        disciplines.sort_by(|a, b| {
            b.fraction
                .total_cmp(&a.fraction)
                .then(a.discipline.cmp(&b.discipline))
        });
        rows.push(CommunityRow {
            community: c,
            size,
            density,
            most_central,
            disciplines,
        });
    }
    CommunitySummary {
        rows,
        unassigned: assignment.unassigned.clone(),
        discipline_cutoff,
        modularity: assignment.modularity,
        resolution: assignment.resolution,
        seed: assignment.seed,
    }
}

fn roman(n: usize) -> String {
    const TABLE: [(usize, &str); 9] = [
        (100, "c"),
        (90, "xc"),
        (50, "l"),
        (40, "xl"),
        (10, "x"),
        (9, "ix"),
        (5, "v"),
        (4, "iv"),
        (1, "i"),
    ];
    let mut n = n;
    let mut out = String::new();
    for &(value, sym) in &TABLE {
        while n >= value {
            out.push_str(sym);
            n -= value;
        }
    }
    out
}

impl CommunitySummary {
    /// Plain-text table with one row per reported community.
    pub fn to_table(&self) -> String {
        let central: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.most_central.join(", "))
            .collect();
        let width = central
            .iter()
            .map(|c| c.chars().count())
            .max()
            .unwrap_or(0)
            .max(18);
        let mut out = format!(
            "{:<7} {:>5} {:>8}  {:<width$}  {}\n",
            "", "size", "density", "most central nodes", "disciplines"
        );
        for (r, central) in self.rows.iter().zip(&central) {
            let disciplines: Vec<&str> = r
                .disciplines
                .iter()
                .map(|d| d.discipline.as_str())
                .collect();
            out.push_str(&format!(
                "{:<7} {:>5} {:>8.2}  {:<width$}  {}\n",
                format!("({})", roman(r.community + 1)),
                r.size,
                r.density,
                central,
                disciplines.join(", ")
            ));
        }
        out.push_str(&format!(
            "modularity {:.4} (resolution {}, seed {}); {} unassigned\n",
            self.modularity,
            self.resolution,
            self.seed,
            self.unassigned.len()
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    pub(crate) fn two_cliques() -> Graph {
        let mut edges = Vec::new();
        for base in [0, 4] {
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.push((base + i, base + j));
                }
            }
        }
        edges.push((3, 4));
        from_edges(8, &edges)
    }

    #[test]
    fn two_cliques_are_recovered() {
        let a = louvain(&two_cliques(), &LouvainConfig::default()).unwrap();
        assert_eq!(a.community_count(), 2);
        assert!(a.community[..4].iter().all(|&c| c == a.community[0]));
        assert!(a.community[4..].iter().all(|&c| c == a.community[4]));
        assert_ne!(a.community[0], a.community[4]);
        assert!((a.modularity - modularity(&two_cliques(), &a.community, 1.0)).abs() < 1e-12);
        assert!(a.unassigned.is_empty());
    }

    #[test]
    fn complete_graph_stays_whole() {
        let a = louvain(&complete(5), &LouvainConfig::default()).unwrap();
        assert!(a.community.iter().all(|&c| c == 0));
        assert!(a.modularity.abs() < 1e-12);
    }

    #[test]
    fn edgeless_graph_is_an_error() {
        assert!(matches!(
            louvain(&from_edges(4, &[]), &LouvainConfig::default()),
            Err(Error::NoEdges)
        ));
    }

    #[test]
    fn ids_are_ordered_by_size_and_singletons_unassigned() {
        // triangle, an edge, and an isolated node
        let g = from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4)]);
        let a = louvain(&g, &LouvainConfig::default()).unwrap();
        assert_eq!(a.community, vec![0, 0, 0, 1, 1, 2]);
        assert_eq!(a.unassigned, vec!["n05".to_string()]);
    }

    #[test]
    fn level_modularity_never_decreases() {
        let g = from_edges(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 3),
                (5, 6),
                (6, 7),
                (7, 8),
                (8, 6),
                (8, 9),
                (9, 0),
            ],
        );
        let a = louvain(&g, &LouvainConfig::default()).unwrap();
        for w in a.level_modularity.windows(2) {
            assert!(w[1] >= w[0]);
        }
        assert!(a.modularity >= a.level_modularity[0]);
    }

    #[test]
    fn density_of_small_communities() {
        let g = from_edges(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]);
        let a = louvain(&g, &LouvainConfig::default()).unwrap();
        let s = summarize_communities(&a, &g, &Corpus::empty(), 0.2);
        assert_eq!(s.rows.len(), 2);
        assert_eq!((s.rows[0].size, s.rows[0].density), (3, 1.0));
        assert_eq!((s.rows[1].size, s.rows[1].density), (2, 1.0));
    }

    #[test]
    fn roman_numerals() {
        assert_eq!(roman(1), "i");
        assert_eq!(roman(4), "iv");
        assert_eq!(roman(7), "vii");
        assert_eq!(roman(21), "xxi");
    }
}
