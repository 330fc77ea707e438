//! Node centralities on unweighted graphs.
//!
//! Conventions:
//! - degree centrality is `deg / (n - 1)`;
//! - betweenness is exact (Brandes), normalised by `(n - 1)(n - 2) / 2`;
//! - closeness uses Wasserman–Faust component scaling,
//!   `((r - 1) / (n - 1)) * ((r - 1) / sum of distances)` for a node whose
//!   component has `r` nodes, and 0 for isolated nodes;
//! - eigenvector centrality is the principal eigenvector of the adjacency
//!   matrix rescaled to a maximum of 1.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::parallel::ordered_map;

pub const DEFAULT_EIGEN_TOL: f64 = 1e-8;
pub const DEFAULT_EIGEN_MAX_ITER: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeCentrality {
    pub node: String,
    pub degree: usize,
    pub degree_centrality: f64,
    pub betweenness: f64,
    pub closeness: f64,
    pub eigenvector: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityParams {
    pub eigen_tol: f64,
    pub eigen_max_iter: usize,
    pub workers: usize,
}

impl Default for CentralityParams {
    fn default() -> Self {
        Self {
            eigen_tol: DEFAULT_EIGEN_TOL,
            eigen_max_iter: DEFAULT_EIGEN_MAX_ITER,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityReport {
    pub nodes: Vec<NodeCentrality>,
    pub params: CentralityParams,
    /// Human-readable statement of the normalisations used.
    pub conventions: String,
}

pub const CONVENTIONS: &str = "degree_c = deg/(n-1); betweenness = Brandes/((n-1)(n-2)/2); \
closeness = ((r-1)/(n-1))*((r-1)/sum d) over the node's component of size r; \
eigenvector = power iteration on A+I from the all-ones vector, max-normalised";

impl CentralityReport {
    pub fn get(&self, node: &str) -> Option<&NodeCentrality> {
        self.nodes.iter().find(|c| c.node == node)
    }
}

/// Raw and normalised degree.
pub fn degree_all(graph: &Graph) -> Result<Vec<(usize, f64)>> {
    let n = graph.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes { required: 2 });
    }
    Ok((0..n)
        .map(|u| {
            let d = graph.degree(u);
            (d, d as f64 / (n - 1) as f64)
        })
        .collect())
}

/// Per-source dependency vector from one Brandes pass.
fn brandes_source(graph: &Graph, s: usize) -> Vec<f64> {
    let n = graph.node_count();
    let mut sigma = vec![0u64; n];
    let mut dist = vec![usize::MAX; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    sigma[s] = 1;
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in graph.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
                preds[w].push(v);
            }
        }
    }
    let mut delta = vec![0.0; n];
    for &w in order.iter().rev() {
        for &v in &preds[w] {
            delta[v] += sigma[v] as f64 / sigma[w] as f64 * (1.0 + delta[w]);
        }
    }
    delta[s] = 0.0;
    delta
}

/// Exact shortest-path betweenness.
///
/// Sources may be processed on several workers; dependencies are always
/// added in source order so the result does not depend on `workers`.
pub fn betweenness_all(graph: &Graph, workers: usize) -> Vec<f64> {
    let n = graph.node_count();
    let mut bc = vec![0.0; n];
    if workers <= 1 {
        for s in 0..n {
            for (acc, d) in bc.iter_mut().zip(brandes_source(graph, s)) {
                *acc += d;
            }
        }
    } else {
        let sources: Vec<usize> = (0..n).collect();
        for delta in ordered_map(&sources, workers, |&s| brandes_source(graph, s)) {
            for (acc, d) in bc.iter_mut().zip(delta) {
                *acc += d;
            }
        }
    }
    if n < 3 {
        return vec![0.0; n];
    }
    // each unordered pair is counted from both ends
    let scale = 1.0 / ((n - 1) * (n - 2)) as f64;
    bc.iter().map(|b| b * scale).collect()
}

pub fn closeness_all(graph: &Graph) -> Vec<f64> {
    let n = graph.node_count();
    (0..n)
        .map(|u| {
            let reach: Vec<usize> = graph.bfs_distances(u).into_iter().flatten().collect();
            let r = reach.len();
            let total: usize = reach.iter().sum();
            if r <= 1 || total == 0 {
                0.0
            } else {
                let r1 = (r - 1) as f64;
                (r1 / (n - 1) as f64) * (r1 / total as f64)
            }
        })
        .collect()
}

/// Power iteration on `A + I` starting from the all-ones vector.
///
/// The identity shift has the same eigenvectors as `A` but keeps bipartite
/// graphs (stars, paths) from oscillating between two iterates. Iterates are
/// max-normalised; convergence is declared when successive iterates differ
/// by less than `tol` in the infinity norm.
///
/// Each connected component is iterated separately. Only components whose
/// leading eigenvalue equals the graph's largest one carry the principal
/// eigenvector; they are max-normalised and every other node reports 0.
pub fn eigenvector_all(graph: &Graph, tol: f64, max_iter: usize) -> Result<Vec<f64>> {
    if graph.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let n = graph.node_count();
    let mut component = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if component[s] != usize::MAX {
            continue;
        }
        let id = members.len();
        let reached: Vec<usize> = graph
            .bfs_distances(s)
            .iter()
            .enumerate()
            .filter(|(_, d)| d.is_some())
            .map(|(v, _)| v)
            .collect();
        for &v in &reached {
            component[v] = id;
        }
        members.push(reached);
    }

    let mut x = vec![0.0; n];
    let mut eigenvalues = vec![0.0; members.len()];
    for (c, nodes) in members.iter().enumerate() {
        if nodes.len() < 2 {
            continue;
        }
        let (vector, lambda) = power_iterate(graph, nodes, tol, max_iter)?;
        eigenvalues[c] = lambda;
        for (&v, value) in nodes.iter().zip(vector) {
            x[v] = value;
        }
    }
    let lead = eigenvalues.iter().cloned().fold(0.0, f64::max);
    for v in 0..n {
        if eigenvalues[component[v]] < lead * (1.0 - 1e-9) {
            x[v] = 0.0;
        }
    }
    Ok(x)
}

/// Returns the max-normalised leading eigenvector of the component spanned by
/// `nodes` and its Rayleigh-quotient eigenvalue (of `A`, not `A + I`).
fn power_iterate(
    graph: &Graph,
    nodes: &[usize],
    tol: f64,
    max_iter: usize,
) -> Result<(Vec<f64>, f64)> {
    let local: std::collections::HashMap<usize, usize> =
        nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = nodes
        .iter()
        .map(|&v| graph.neighbors(v).iter().map(|w| local[w]).collect())
        .collect();
    let apply = |x: &[f64]| -> Vec<f64> {
        adj.iter()
            .map(|ns| ns.iter().map(|&w| x[w]).sum::<f64>())
            .collect()
    };
    let mut x = vec![1.0; nodes.len()];
    let mut residual = f64::INFINITY;
    for _ in 0..max_iter {
        let ax = apply(&x);
        let mut next: Vec<f64> = x.iter().zip(&ax).map(|(a, b)| a + b).collect();
        let max = next.iter().cloned().fold(0.0, f64::max);
        for v in &mut next {
            *v /= max;
        }
        residual = x
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        x = next;
        if residual < tol {
            let ax = apply(&x);
            let num: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
            let den: f64 = x.iter().map(|a| a * a).sum();
            return Ok((x, num / den));
        }
    }
    Err(Error::NotConverged {
        iterations: max_iter,
        residual,
    })
}

pub fn centrality_report(graph: &Graph, params: &CentralityParams) -> Result<CentralityReport> {
    let degrees = degree_all(graph)?;
    let betweenness = betweenness_all(graph, params.workers);
    let closeness = closeness_all(graph);
    let eigen = eigenvector_all(graph, params.eigen_tol, params.eigen_max_iter)?;
    let nodes = (0..graph.node_count())
        .map(|u| NodeCentrality {
            node: graph.label(u).to_string(),
            degree: degrees[u].0,
            degree_centrality: degrees[u].1,
            betweenness: betweenness[u],
            closeness: closeness[u],
            eigenvector: eigen[u],
        })
        .collect();
    Ok(CentralityReport {
        nodes,
        params: params.clone(),
        conventions: CONVENTIONS.to_string(),
    })
}
