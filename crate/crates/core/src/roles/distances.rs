//! Layered structural distances between nodes.
//!
//! For layer `k`, node `u` is described by the sorted degrees of the nodes
//! exactly `k` hops away (its ring). The distance between `u` and `v` is
//! accumulated over layers: `f_k(u, v) = f_{k-1}(u, v) + DTW(ring_k(u), ring_k(v))`
//! with element cost `max(a, b) / min(a, b) - 1`. A pair stops at the first
//! layer where either ring is empty.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::parallel::ordered_map;

/// Cost of aligning two degrees.
pub fn degree_cost(a: f64, b: f64) -> f64 {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    if hi == 0.0 {
        0.0
    } else if lo == 0.0 {
        f64::INFINITY
    } else {
        hi / lo - 1.0
    }
}

/// Full dynamic time warping with steps (1,0), (0,1), (1,1). Empty inputs
/// have infinite distance unless both are empty.
pub fn dtw<T>(a: &[T], b: &[T], cost: impl Fn(&T, &T) -> f64) -> f64 {
    if a.is_empty() || b.is_empty() {
        return if a.len() == b.len() {
            0.0
        } else {
            f64::INFINITY
        };
    }
    let mut prev = vec![f64::INFINITY; b.len() + 1];
    let mut cur = vec![f64::INFINITY; b.len() + 1];
    prev[0] = 0.0;
    for x in a {
        cur[0] = f64::INFINITY;
        for (j, y) in b.iter().enumerate() {
            let best = prev[j].min(prev[j + 1]).min(cur[j]);
            cur[j + 1] = cost(x, y) + best;
        }
        std::mem::swap(&mut prev, &mut cur);
        prev[0] = f64::INFINITY;
    }
    prev[b.len()]
}

/// Sorted ring degree sequences, `rings[u][k]` for `k` up to the node's
/// eccentricity or `max_layer`, whichever is smaller.
pub fn ring_degree_sequences(graph: &Graph, max_layer: usize) -> Vec<Vec<Vec<usize>>> {
    (0..graph.node_count())
        .map(|u| {
            let mut rings: Vec<Vec<usize>> = Vec::new();
            for (v, d) in graph.bfs_distances(u).into_iter().enumerate() {
                let Some(d) = d else { continue };
                if d > max_layer {
                    continue;
                }
                if rings.len() <= d {
                    rings.resize(d + 1, Vec::new());
                }
                rings[d].push(graph.degree(v));
            }
            for r in &mut rings {
                r.sort_unstable();
            }
            rings
        })
        .collect()
}

/// Run-length form of a sorted degree sequence: `(degree, multiplicity)`.
fn compress(seq: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &d in seq {
        match out.last_mut() {
            Some((deg, count)) if *deg == d => *count += 1,
            _ => out.push((d, 1)),
        }
    }
    out
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct DistanceOptions {
    /// Compare run-length compressed degree sequences, weighting the element
    /// cost by the larger multiplicity.
    pub compress_sequences: bool,
    /// Only evaluate pairs among each node's `2 * ceil(log2 n)` nearest
    /// neighbours in degree, instead of all pairs.
    pub limit_pairs: bool,
}

/// `f_k(u, v)` for every evaluated pair `u < v` and layer `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceTable {
    pub node_count: usize,
    pub max_layer: usize,
    /// `layers[k]` lists `((u, v), f_k)` sorted by pair.
    pub layers: Vec<Vec<((usize, usize), f64)>>,
}

impl DistanceTable {
    pub fn get(&self, layer: usize, u: usize, v: usize) -> Option<f64> {
        let key = if u < v { (u, v) } else { (v, u) };
        let layer = self.layers.get(layer)?;
        layer
            .binary_search_by(|(pair, _)| pair.cmp(&key))
            .ok()
            .map(|i| layer[i].1)
    }
}

fn candidate_pairs(graph: &Graph, options: &DistanceOptions) -> Vec<(usize, usize)> {
    let n = graph.node_count();
    if !options.limit_pairs {
        return (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
    }
    let per_node = 2 * (n.max(2) as f64).log2().ceil() as usize;
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&u| (graph.degree(u), u));
    let mut pairs = BTreeSet::new();
    for (pos, &u) in by_degree.iter().enumerate() {
        // expand outwards in the degree-sorted order
        let (mut lo, mut hi) = (pos, pos + 1);
        let mut taken = 0;
        while taken < per_node && (lo > 0 || hi < n) {
            let pick_low = match (lo > 0, hi < n) {
                (true, true) => {
                    let dl = graph.degree(u) - graph.degree(by_degree[lo - 1]);
                    let dh = graph.degree(by_degree[hi]) - graph.degree(u);
                    dl <= dh
                }
                (low, _) => low,
            };
            let v = if pick_low {
                lo -= 1;
                by_degree[lo]
            } else {
                hi += 1;
                by_degree[hi - 1]
            };
            pairs.insert((u.min(v), u.max(v)));
            taken += 1;
        }
    }
    pairs.into_iter().collect()
}

/// Cumulative structural distances up to `max_layer`.
pub fn structural_distances(
    graph: &Graph,
    max_layer: usize,
    options: &DistanceOptions,
    workers: usize,
) -> DistanceTable {
    let rings = ring_degree_sequences(graph, max_layer);
    let compressed: Vec<Vec<Vec<(usize, usize)>>> = if options.compress_sequences {
        rings
            .iter()
            .map(|rs| rs.iter().map(|r| compress(r)).collect())
            .collect()
    } else {
        Vec::new()
    };
    let pairs = candidate_pairs(graph, options);
    let per_pair: Vec<Vec<f64>> = ordered_map(&pairs, workers, |&(u, v)| {
        let depth = rings[u].len().min(rings[v].len());
        let mut acc = 0.0;
        (0..depth)
            .map(|k| {
                let step = if options.compress_sequences {
                    dtw(&compressed[u][k], &compressed[v][k], |a, b| {
                        degree_cost(a.0 as f64, b.0 as f64) * a.1.max(b.1) as f64
                    })
                } else {
                    dtw(&rings[u][k], &rings[v][k], |a, b| {
                        degree_cost(*a as f64, *b as f64)
                    })
                };
                acc += step;
                acc
            })
            .collect()
    });
    let mut layers = vec![Vec::new(); max_layer + 1];
    for (&pair, fs) in pairs.iter().zip(&per_pair) {
        for (k, &f) in fs.iter().enumerate() {
            layers[k].push((pair, f));
        }
    }
    while layers.len() > 1 && layers.last().is_some_and(Vec::is_empty) {
        layers.pop();
    }
    DistanceTable {
        node_count: graph.node_count(),
        max_layer,
        layers,
    }
}
