//! Structural roles: struc2vec embeddings clustered with k-means.
//!
//! The pipeline is `structural_distances` → `build_context_graph` →
//! `role_walks` → `train_embeddings` → `select_k_and_cluster`, wrapped by
//! [`fit_roles`]. Role ids are ordered by descending mean member degree.

pub mod context;
pub mod distances;
pub mod kmeans;
pub mod skipgram;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use context::{build_context_graph, role_walks, ContextGraph, ContextLayer, WalkConfig};
pub use distances::{dtw, structural_distances, DistanceOptions, DistanceTable};
pub use kmeans::{
    kmeans, select_k, select_k_and_cluster, silhouette_samples, silhouette_score, stability_report,
    Clustering, KMeans, Selection, SilhouettePoint, StabilityRow,
};
pub use skipgram::{cosine, train_embeddings, SkipGramConfig};

use crate::centrality::CentralityReport;
use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_LAYER_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RoleParams {
    pub dims: usize,
    pub walks_per_node: usize,
    pub walk_length: usize,
    pub window: usize,
    pub epochs: usize,
    pub negative: usize,
    pub learning_rate: f64,
    /// Frequent-token downsampling threshold; 0 disables.
    pub sample: f64,
    /// `None` means `min(diameter, 6)`.
    pub max_layer: Option<usize>,
    pub stay_prob: f64,
    pub k_min: usize,
    pub k_max: usize,
    pub restarts: usize,
    pub selection: Selection,
    pub seed: u64,
    pub distance: DistanceOptions,
    pub workers: usize,
}

impl Default for RoleParams {
    fn default() -> Self {
        Self {
            dims: 128,
            walks_per_node: 10,
            walk_length: 80,
            window: 10,
            epochs: 5,
            negative: 5,
            learning_rate: 0.025,
            sample: 1e-3,
            max_layer: None,
            stay_prob: 0.3,
            k_min: 2,
            k_max: 25,
            restarts: 10,
            selection: Selection::Knee,
            seed: 42,
            distance: DistanceOptions::default(),
            workers: 1,
        }
    }
}

impl RoleParams {
    pub fn resolved_max_layer(&self, graph: &Graph) -> usize {
        self.max_layer
            .unwrap_or_else(|| graph.diameter().min(MAX_LAYER_CAP))
    }

    fn skipgram(&self) -> SkipGramConfig {
        SkipGramConfig {
            dims: self.dims,
            window: self.window,
            epochs: self.epochs,
            negative: self.negative,
            learning_rate: self.learning_rate,
            sample: self.sample,
            seed: self.seed,
            ..SkipGramConfig::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoleModel {
    /// Node ids, index-aligned with `embedding` and `labels`.
    pub nodes: Vec<String>,
    pub embedding: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
    pub k_selected: usize,
    pub silhouette_curve: Vec<SilhouettePoint>,
    pub stability: Vec<StabilityRow>,
    pub params: RoleParams,
    pub max_layer: usize,
}

impl RoleModel {
    pub fn role_of(&self, node: &str) -> Option<usize> {
        self.nodes
            .iter()
            .position(|n| n == node)
            .map(|i| self.labels[i])
    }
}

/// Relabels so role 0 has the highest mean degree; ties by lowest member index.
pub fn order_roles_by_degree(labels: &[usize], graph: &Graph) -> Vec<usize> {
    let mut groups: BTreeMap<usize, (usize, usize, usize)> = BTreeMap::new();
    for (u, &l) in labels.iter().enumerate() {
        let e = groups.entry(l).or_insert((0, 0, u));
        e.0 += graph.degree(u);
        e.1 += 1;
    }
    let mut order: Vec<(usize, (usize, usize, usize))> = groups.into_iter().collect();
    // compare sum_a / n_a against sum_b / n_b exactly
    order.sort_by(|(_, a), (_, b)| (b.0 * a.1).cmp(&(a.0 * b.1)).then(a.2.cmp(&b.2)));
    let new_id: BTreeMap<usize, usize> = order
        .iter()
        .enumerate()
        .map(|(i, (l, _))| (*l, i))
        .collect();
    labels.iter().map(|l| new_id[l]).collect()
}

/// Embeds every node of `graph` and clusters the embedding.
pub fn fit_roles(graph: &Graph, params: &RoleParams) -> Result<RoleModel> {
    let n = graph.node_count();
    if n < 3 {
        return Err(Error::TooFewNodes { required: 3 });
    }
    let max_layer = params.resolved_max_layer(graph);
    let distances = structural_distances(graph, max_layer, &params.distance, params.workers);
    let context = build_context_graph(&distances);
    let walks = role_walks(
        &context,
        &WalkConfig {
            walks_per_node: params.walks_per_node,
            walk_length: params.walk_length,
            stay_prob: params.stay_prob,
            seed: params.seed,
            workers: params.workers,
        },
    );
    let embedding = train_embeddings(&walks, n, &params.skipgram())?;
    let clustering = select_k_and_cluster(
        &embedding,
        params.k_min,
        params.k_max,
        params.restarts,
        params.seed,
        params.selection,
    )?;
    Ok(RoleModel {
        nodes: graph.labels().to_vec(),
        embedding,
        labels: order_roles_by_degree(&clustering.labels, graph),
        k_selected: clustering.k,
        silhouette_curve: clustering.curve,
        stability: stability_report(&clustering.by_k),
        params: params.clone(),
        max_layer,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoleRow {
    pub role: usize,
    pub count: usize,
    pub mean_degree: f64,
    pub mean_betweenness: f64,
    pub mean_closeness: f64,
    pub mean_eigenvector: f64,
    /// Fraction of members tagged on at least one focal paper.
    pub focal_proportion: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoleSummary {
    pub rows: Vec<RoleRow>,
}

/// Per-role means of the centrality report. `nodes[i]` carries `labels[i]`.
pub fn summarize_roles(
    nodes: &[String],
    labels: &[usize],
    report: &CentralityReport,
    corpus: &Corpus,
) -> Result<RoleSummary> {
    let k = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut acc = vec![(0usize, 0usize, 0.0, 0.0, 0.0, 0usize); k];
    for (node, &l) in nodes.iter().zip(labels) {
        let c = report
            .get(node)
            .ok_or_else(|| Error::UnknownField(node.clone()))?;
        let a = &mut acc[l];
        a.0 += 1;
        a.1 += c.degree;
        a.2 += c.betweenness;
        a.3 += c.closeness;
        a.4 += c.eigenvector;
        a.5 += corpus.field_in_focal(node) as usize;
    }
    let rows = acc
        .into_iter()
        .enumerate()
        .filter(|(_, a)| a.0 > 0)
        .map(|(role, a)| {
            let n = a.0 as f64;
            RoleRow {
                role,
                count: a.0,
                mean_degree: a.1 as f64 / n,
                mean_betweenness: a.2 / n,
                mean_closeness: a.3 / n,
                mean_eigenvector: a.4 / n,
                focal_proportion: a.5 as f64 / n,
            }
        })
        .collect();
    Ok(RoleSummary { rows })
}

impl RoleSummary {
    /// Plain-text table with one row per role.
    pub fn to_table(&self, focal_label: &str) -> String {
        let mut out = format!(
            "{:<5} {:>6} {:>11} {:>8} {:>9} {:>11} {:>6}\n",
            "role", "count", "mean degree", "betw.", "closeness", "eigenvector", focal_label
        );
        for r in &self.rows {
            out.push_str(&format!(
                "#{:<4} {:>6} {:>11.1} {:>8.3} {:>9.3} {:>11.3} {:>6.2}\n",
                r.role + 1,
                r.count,
                r.mean_degree,
                r.mean_betweenness,
                r.mean_closeness,
                r.mean_eigenvector,
                r.focal_proportion
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::{centrality_report, CentralityParams};
    use crate::graph::fixtures::*;

    #[test]
    fn roles_ordered_by_mean_degree() {
        // star: centre degree 4, leaves degree 1
        let g = star(4);
        assert_eq!(
            order_roles_by_degree(&[1, 0, 0, 0, 0], &g),
            vec![0, 1, 1, 1, 1]
        );
        assert_eq!(
            order_roles_by_degree(&[0, 1, 1, 1, 1], &g),
            vec![0, 1, 1, 1, 1]
        );
    }

    #[test]
    fn summary_matches_hand_means() {
        let g = star(3);
        let report = centrality_report(&g, &CentralityParams::default()).unwrap();
        let s = summarize_roles(g.labels(), &[0, 1, 1, 1], &report, &Corpus::empty()).unwrap();
        assert_eq!(s.rows.len(), 2);
        assert_eq!(s.rows[1].count, 3);
        assert_eq!(s.rows[1].mean_degree, 1.0);
        assert_eq!(s.rows[1].mean_betweenness, 0.0);
        assert_eq!(s.rows[0].mean_degree, 3.0);
        assert_eq!(s.rows[0].mean_betweenness, 1.0);
        assert_eq!(s.rows.iter().map(|r| r.count).sum::<usize>(), 4);
    }

    #[test]
    fn fit_is_deterministic() {
        let g = from_edges(
            10,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (4, 5),
                (5, 6),
                (5, 7),
                (5, 8),
                (8, 9),
            ],
        );
        let params = RoleParams {
            dims: 8,
            walks_per_node: 4,
            walk_length: 20,
            epochs: 2,
            k_max: 4,
            restarts: 3,
            ..Default::default()
        };
        let a = fit_roles(&g, &params).unwrap();
        let b = fit_roles(&g, &params).unwrap();
        assert_eq!(a, b);
        assert!(a.embedding.iter().flatten().all(|x| x.is_finite()));
        assert!((2..=4).contains(&a.k_selected));
        assert!(a
            .silhouette_curve
            .iter()
            .all(|p| (-1.0..=1.0).contains(&p.silhouette)));
    }
}
