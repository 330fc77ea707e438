//! k-means clustering, silhouette scores, and choice of k.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::context::derive_seed;
use crate::error::{Error, Result};

const MAX_LLOYD_ITER: usize = 300;

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn nearest(point: &[f64], centroids: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (c, centroid) in centroids.iter().enumerate() {
        let d = sq_dist(point, centroid);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

pub fn distinct_points(points: &[Vec<f64>]) -> usize {
    points
        .iter()
        .map(|p| p.iter().map(|x| x.to_bits()).collect::<Vec<u64>>())
        .collect::<HashSet<_>>()
        .len()
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMeans {
    pub labels: Vec<usize>,
    pub centroids: Vec<Vec<f64>>,
    pub inertia: f64,
}

fn plus_plus_init(points: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut centroids = vec![points[rng.gen_range(0..points.len())].clone()];
    let mut d2: Vec<f64> = points.iter().map(|p| sq_dist(p, &centroids[0])).collect();
    while centroids.len() < k {
        let total: f64 = d2.iter().sum();
        let next = if total <= 0.0 {
            rng.gen_range(0..points.len())
        } else {
            let r = rng.gen::<f64>() * total;
            let mut acc = 0.0;
            let mut pick = points.len() - 1;
            for (i, &d) in d2.iter().enumerate() {
                acc += d;
                if acc > r {
                    pick = i;
                    break;
                }
            }
            pick
        };
        centroids.push(points[next].clone());
        for (i, p) in points.iter().enumerate() {
            d2[i] = d2[i].min(sq_dist(p, centroids.last().unwrap()));
        }
    }
    centroids
}

fn lloyd(points: &[Vec<f64>], mut centroids: Vec<Vec<f64>>) -> KMeans {
    let k = centroids.len();
    let dim = points[0].len();
    let mut labels = vec![usize::MAX; points.len()];
    for _ in 0..MAX_LLOYD_ITER {
        let mut changed = false;
        for (i, p) in points.iter().enumerate() {
            let c = nearest(p, &centroids).0;
            if labels[i] != c {
                labels[i] = c;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        let mut sums = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for (p, &l) in points.iter().zip(&labels) {
            counts[l] += 1;
            for (s, x) in sums[l].iter_mut().zip(p) {
                *s += x;
            }
        }
        for c in 0..k {
            if counts[c] > 0 {
                centroids[c] = sums[c].iter().map(|s| s / counts[c] as f64).collect();
            } else {
                // re-seed an empty cluster at the point worst served by its centroid
                let far = (0..points.len())
                    .max_by(|&a, &b| {
                        sq_dist(&points[a], &centroids[labels[a]])
                            .total_cmp(&sq_dist(&points[b], &centroids[labels[b]]))
                            .then(b.cmp(&a))
                    })
                    .unwrap();
                centroids[c] = points[far].clone();
                labels[far] = c;
            }
        }
    }
    let inertia = points
        .iter()
        .zip(&labels)
        .map(|(p, &l)| sq_dist(p, &centroids[l]))
        .sum();
    KMeans {
        labels,
        centroids,
        inertia,
    }
}

/// k-means++ seeding, `restarts` runs, lowest inertia kept (earliest on ties).
pub fn kmeans(points: &[Vec<f64>], k: usize, restarts: usize, seed: u64) -> Result<KMeans> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let distinct = distinct_points(points);
    if distinct < k {
        return Err(Error::Degenerate(format!(
            "{distinct} distinct points cannot form {k} clusters"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<KMeans> = None;
    for _ in 0..restarts.max(1) {
        let run = lloyd(points, plus_plus_init(points, k, &mut rng));
        if best.as_ref().is_none_or(|b| run.inertia < b.inertia) {
            best = Some(run);
        }
    }
    Ok(best.unwrap())
}

/// Per-point silhouette. Points in singleton clusters score 0.
pub fn silhouette_samples(points: &[Vec<f64>], labels: &[usize]) -> Result<Vec<f64>> {
    let k = labels.iter().copied().max().map_or(0, |m| m + 1);
    let used: BTreeSet<usize> = labels.iter().copied().collect();
    if used.len() < 2 {
        return Err(Error::Degenerate(
            "silhouette needs at least two clusters".into(),
        ));
    }
    let mut sizes = vec![0usize; k];
    for &l in labels {
        sizes[l] += 1;
    }
    Ok((0..points.len())
        .map(|i| {
            let own = labels[i];
            if sizes[own] <= 1 {
                return 0.0;
            }
            let mut sums = vec![0.0; k];
            for (j, p) in points.iter().enumerate() {
                if j != i {
                    sums[labels[j]] += sq_dist(&points[i], p).sqrt();
                }
            }
            let a = sums[own] / (sizes[own] - 1) as f64;
            let b = (0..k)
                .filter(|&c| c != own && sizes[c] > 0)
                .map(|c| sums[c] / sizes[c] as f64)
                .fold(f64::INFINITY, f64::min);
            let denom = a.max(b);
            if denom == 0.0 {
                0.0
            } else {
                (b - a) / denom
            }
        })
        .collect())
}

pub fn silhouette_score(points: &[Vec<f64>], labels: &[usize]) -> Result<f64> {
    let s = silhouette_samples(points, labels)?;
    Ok(s.iter().sum::<f64>() / s.len() as f64)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Selection {
    /// Point of the silhouette curve furthest above the chord joining its ends.
    #[default]
    Knee,
    /// Highest mean silhouette.
    Max,
}

impl FromStr for Selection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "knee" => Ok(Selection::Knee),
            "max" => Ok(Selection::Max),
            _ => Err(Error::InvalidParameter(format!(
                "selection `{s}` (expected knee, max)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SilhouettePoint {
    pub k: usize,
    pub silhouette: f64,
}

/// Picks k from a silhouette curve; ties go to the smaller k.
///
/// For the knee rule, each point's signed perpendicular distance to the
/// chord from the first to the last point is measured, positive above the
/// chord. The endpoints sit at distance 0, so a curve that never rises above
/// its chord selects the first k.
pub fn select_k(curve: &[SilhouettePoint], rule: Selection) -> usize {
    let score = |p: &SilhouettePoint| -> f64 {
        match rule {
            Selection::Max => p.silhouette,
            Selection::Knee => {
                let (a, b) = (curve[0], curve[curve.len() - 1]);
                let (dx, dy) = ((b.k as f64 - a.k as f64), (b.silhouette - a.silhouette));
                let len = (dx * dx + dy * dy).sqrt();
                if len == 0.0 {
                    return 0.0;
                }
                (dx * (p.silhouette - a.silhouette) - dy * (p.k as f64 - a.k as f64)) / len
            }
        }
    };
    let mut best = curve[0];
    let mut best_score = score(&best);
    for p in &curve[1..] {
        let s = score(p);
        if s > best_score + 1e-12 {
            best = *p;
            best_score = s;
        }
    }
    best.k
}

#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub k: usize,
    pub labels: Vec<usize>,
    pub curve: Vec<SilhouettePoint>,
    /// Labels for every k evaluated.
    pub by_k: BTreeMap<usize, Vec<usize>>,
}

/// Clusters for every k in `k_min..=k_max` and keeps the selected one.
pub fn select_k_and_cluster(
    points: &[Vec<f64>],
    k_min: usize,
    k_max: usize,
    restarts: usize,
    seed: u64,
    rule: Selection,
) -> Result<Clustering> {
    let n = points.len();
    if k_min < 2 || k_min >= k_max || k_max + 1 > n {
        return Err(Error::InvalidParameter(format!(
            "k range {k_min}..{k_max} invalid for {n} points (need 2 <= k_min < k_max <= n-1)"
        )));
    }
    let mut curve = Vec::new();
    let mut by_k = BTreeMap::new();
    for k in k_min..=k_max {
        let km = kmeans(points, k, restarts, derive_seed(seed, k as u64, 0x6b6d))?;
        curve.push(SilhouettePoint {
            k,
            silhouette: silhouette_score(points, &km.labels)?,
        });
        by_k.insert(k, km.labels);
    }
    let k = select_k(&curve, rule);
    Ok(Clustering {
        k,
        labels: by_k[&k].clone(),
        curve,
        by_k,
    })
}

/// How much of the clustering at `k_from` survives at `k_to`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityRow {
    pub k_from: usize,
    pub k_to: usize,
    /// Mean over clusters at `k_from` of the best Jaccard match at `k_to`.
    pub mean_best_jaccard: f64,
    /// Clusters at `k_from` found unchanged at `k_to`.
    pub identical_clusters: usize,
}

fn clusters(labels: &[usize]) -> Vec<BTreeSet<usize>> {
    let mut map: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate() {
        map.entry(l).or_default().insert(i);
    }
    map.into_values().collect()
}

pub fn stability_report(by_k: &BTreeMap<usize, Vec<usize>>) -> Vec<StabilityRow> {
    let ks: Vec<usize> = by_k.keys().copied().collect();
    ks.windows(2)
        .map(|w| {
            let from = clusters(&by_k[&w[0]]);
            let to = clusters(&by_k[&w[1]]);
            let best: Vec<f64> = from
                .iter()
                .map(|a| {
                    to.iter()
                        .map(|b| a.intersection(b).count() as f64 / a.union(b).count() as f64)
                        .fold(0.0, f64::max)
                })
                .collect();
            StabilityRow {
                k_from: w[0],
                k_to: w[1],
                mean_best_jaccard: best.iter().sum::<f64>() / best.len() as f64,
                identical_clusters: best.iter().filter(|&&j| j == 1.0).count(),
            }
        })
        .collect()
}
