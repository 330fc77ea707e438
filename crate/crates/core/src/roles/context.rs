//! Multilayer context graph and biased walks over it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::distances::DistanceTable;
use crate::parallel::ordered_map;

/// One layer of the context graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ContextLayer {
    /// `neighbors[u]` = `(v, w_k(u, v))`, sorted by `v`.
    pub neighbors: Vec<Vec<(usize, f64)>>,
    /// Running sums of the weights in `neighbors[u]`, for sampling.
    cumulative: Vec<Vec<f64>>,
    /// Number of incident edges heavier than the layer's mean weight.
    pub gamma: Vec<usize>,
    pub mean_weight: f64,
}

impl ContextLayer {
    pub fn contains(&self, u: usize) -> bool {
        !self.neighbors[u].is_empty()
    }

    /// Weight of moving from layer `k` to `k + 1` at `u`; moving down weighs 1.
    pub fn up_weight(&self, u: usize) -> f64 {
        (self.gamma[u] as f64 + std::f64::consts::E).ln()
    }

    /// Samples a neighbour of `u` proportionally to weight, or `u` itself when
    /// it has no weighted neighbours.
    pub fn sample(&self, u: usize, rng: &mut impl Rng) -> usize {
        let cum = &self.cumulative[u];
        let total = cum.last().copied().unwrap_or(0.0);
        if total <= 0.0 {
            return u;
        }
        let r = rng.gen::<f64>() * total;
        let i = cum.partition_point(|&c| c <= r).min(cum.len() - 1);
        self.neighbors[u][i].0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContextGraph {
    pub node_count: usize,
    pub layers: Vec<ContextLayer>,
}

/// Intra-layer weights `exp(-f_k)`, and per-node counts `Γ_k(u)` of edges
/// above the layer mean that drive the up-move weight `ln(Γ_k(u) + e)`.
pub fn build_context_graph(distances: &DistanceTable) -> ContextGraph {
    let n = distances.node_count;
    let layers = distances
        .layers
        .iter()
        .map(|pairs| {
            let mut neighbors = vec![Vec::new(); n];
            for &((u, v), f) in pairs {
                let w = (-f).exp();
                neighbors[u].push((v, w));
                neighbors[v].push((u, w));
            }
            for ns in &mut neighbors {
                ns.sort_by_key(|&(v, _)| v);
            }
            let mean_weight = if pairs.is_empty() {
                0.0
            } else {
                pairs.iter().map(|&(_, f)| (-f).exp()).sum::<f64>() / pairs.len() as f64
            };
            let gamma = neighbors
                .iter()
                .map(|ns| ns.iter().filter(|&&(_, w)| w > mean_weight).count())
                .collect();
            let cumulative = neighbors
                .iter()
                .map(|ns| {
                    let mut acc = 0.0;
                    ns.iter()
                        .map(|&(_, w)| {
                            acc += w;
                            acc
                        })
                        .collect()
                })
                .collect();
            ContextLayer {
                neighbors,
                cumulative,
                gamma,
                mean_weight,
            }
        })
        .collect();
    ContextGraph {
        node_count: n,
        layers,
    }
}

/// Mixes the walk coordinates into an RNG seed (SplitMix64 finaliser).
pub(crate) fn derive_seed(seed: u64, a: u64, b: u64) -> u64 {
    let mut z = seed
        ^ a.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ b.wrapping_mul(0xC2B2_AE3D_27D4_EB4F).rotate_left(31);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkConfig {
    pub walks_per_node: usize,
    pub walk_length: usize,
    /// Probability of an intra-layer step; otherwise the walk changes layer.
    pub stay_prob: f64,
    pub seed: u64,
    pub workers: usize,
}

fn walk_from(
    graph: &ContextGraph,
    start: usize,
    config: &WalkConfig,
    rng: &mut ChaCha8Rng,
) -> Vec<usize> {
    let mut path = Vec::with_capacity(config.walk_length);
    if config.walk_length == 0 {
        return path;
    }
    path.push(start);
    if graph.layers.is_empty() {
        path.resize(config.walk_length, start);
        return path;
    }
    let mut u = start;
    let mut layer = 0;
    while path.len() < config.walk_length {
        if rng.gen::<f64>() < config.stay_prob {
            u = graph.layers[layer].sample(u, rng);
            path.push(u);
        } else {
            let up = graph.layers[layer].up_weight(u);
            if rng.gen::<f64>() < up / (up + 1.0) {
                if layer + 1 < graph.layers.len() && graph.layers[layer + 1].contains(u) {
                    layer += 1;
                }
            } else {
                layer = layer.saturating_sub(1);
            }
        }
    }
    path
}

/// `walks_per_node` walks from every node, ordered by (walk index, node).
/// Each walk has its own RNG derived from `(seed, node, walk index)`, so the
/// corpus is identical for any worker count.
pub fn role_walks(graph: &ContextGraph, config: &WalkConfig) -> Vec<Vec<usize>> {
    let starts: Vec<(usize, usize)> = (0..config.walks_per_node)
        .flat_map(|w| (0..graph.node_count).map(move |u| (w, u)))
        .collect();
    ordered_map(&starts, config.workers, |&(w, u)| {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, u as u64, w as u64));
        walk_from(graph, u, config, &mut rng)
    })
}

#[cfg(test)]
mod tests {
    use super::super::distances::{structural_distances, DistanceOptions};
    use super::*;
    use crate::graph::fixtures::*;

    fn walk_config(stay_prob: f64) -> WalkConfig {
        WalkConfig {
            walks_per_node: 3,
            walk_length: 20,
            stay_prob,
            seed: 42,
            workers: 1,
        }
    }

    #[test]
    fn zero_distance_gives_unit_weight_and_no_gamma_gives_unit_up_weight() {
        let t = DistanceTable {
            node_count: 3,
            max_layer: 0,
            layers: vec![vec![((0, 1), 0.0), ((0, 2), 0.0), ((1, 2), 0.0)]],
        };
        let c = build_context_graph(&t);
        assert_eq!(c.layers[0].neighbors[0], vec![(1, 1.0), (2, 1.0)]);
        // all weights equal the mean, none above it
        assert_eq!(c.layers[0].gamma, vec![0, 0, 0]);
        assert_eq!(c.layers[0].up_weight(0), 1.0);
    }

    #[test]
    fn single_node_walks_repeat_the_node() {
        let g = from_edges(1, &[]);
        let c = build_context_graph(&structural_distances(&g, 0, &DistanceOptions::default(), 1));
        let walks = role_walks(&c, &walk_config(0.3));
        assert_eq!(walks.len(), 3);
        assert!(walks
            .iter()
            .all(|w| w.len() == 20 && w.iter().all(|&u| u == 0)));
    }

    #[test]
    fn walks_are_deterministic_and_worker_independent() {
        let g = from_edges(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
            ],
        );
        let c = build_context_graph(&structural_distances(&g, 3, &DistanceOptions::default(), 1));
        let a = role_walks(&c, &walk_config(0.3));
        let b = role_walks(&c, &walk_config(0.3));
        let parallel = role_walks(
            &c,
            &WalkConfig {
                workers: 3,
                ..walk_config(0.3)
            },
        );
        assert_eq!(a, b);
        assert_eq!(a, parallel);
        assert_eq!(a.len(), 24);
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(42, 0, 1), derive_seed(42, 1, 0));
        assert_ne!(derive_seed(42, 0, 0), derive_seed(43, 0, 0));
    }
}
