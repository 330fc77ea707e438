//! Unweighted simple graph used by the analysis modules.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

/// Undirected simple graph over labelled nodes. Node `i` carries `labels[i]`;
/// adjacency lists are sorted and free of self-loops and duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from labels and index pairs. Self-loops and repeated
    /// pairs are ignored.
    pub fn new(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut sets = vec![BTreeSet::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) out of range for {n} nodes"
                )));
            }
            if u != v {
                sets[u].insert(v);
                sets[v].insert(u);
            }
        }
        let adjacency: Vec<Vec<usize>> =
            sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Self {
            labels,
            adjacency,
            edge_count,
        })
    }

    /// Builds a graph from labelled edges; nodes are the sorted union of
    /// `nodes` and all endpoints.
    pub fn from_labelled_edges<'a>(
        nodes: impl IntoIterator<Item = &'a str>,
        edges: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Self {
        let edges: Vec<(&str, &str)> = edges.into_iter().collect();
        let mut all: BTreeSet<&str> = nodes.into_iter().collect();
        for &(a, b) in &edges {
            all.insert(a);
            all.insert(b);
        }
        let labels: Vec<String> = all.into_iter().map(str::to_string).collect();
        let index: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let pairs: Vec<(usize, usize)> = edges.iter().map(|(a, b)| (index[a], index[b])).collect();
        Self::new(labels, pairs).expect("indices come from the label table")
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Each edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Hop distances from `source`; `None` for unreachable nodes.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.node_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap() + 1;
            for &v in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Largest eccentricity over all components (0 for edgeless graphs).
    pub fn diameter(&self) -> usize {
        (0..self.node_count())
            .map(|s| {
                self.bfs_distances(s)
                    .into_iter()
                    .flatten()
                    .max()
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }

    /// Subgraph induced by `nodes`, relabelled in the given order.
    pub fn induced(&self, nodes: &[usize]) -> Graph {
        let position: HashMap<usize, usize> =
            nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let labels = nodes.iter().map(|&n| self.labels[n].clone()).collect();
        let edges: Vec<(usize, usize)> = nodes
            .iter()
            .enumerate()
            .flat_map(|(i, &n)| {
                let position = &position;
                self.adjacency[n]
                    .iter()
                    .filter_map(move |v| position.get(v).map(|&j| (i, j)))
            })
            .collect();
        Graph::new(labels, edges).expect("induced indices are in range")
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    fn named(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("n{i:02}")).collect()
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(named(n), edges).unwrap()
    }

    /// Node 0 is the centre.
    pub fn star(leaves: usize) -> Graph {
        Graph::new(named(leaves + 1), (1..=leaves).map(|l| (0, l))).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(named(n), (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(named(n), edges.iter().copied()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn self_loops_and_duplicates_are_dropped() {
        let g = from_edges(3, &[(0, 1), (1, 0), (2, 2), (1, 2)]);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn out_of_range_edges_are_rejected() {
        assert!(Graph::new(vec!["a".into()], [(0, 1)]).is_err());
    }

    #[test]
    fn diameter_of_disconnected_graph_is_max_component_diameter() {
        let g = from_edges(6, &[(0, 1), (1, 2), (2, 3), (4, 5)]);
        assert_eq!(g.diameter(), 3);
        assert_eq!(complete(4).diameter(), 1);
    }

    #[test]
    fn induced_subgraph_keeps_internal_edges_only() {
        let g = path(4);
        let sub = g.induced(&[1, 2, 3]);
        assert_eq!(sub.labels(), &["n01", "n02", "n03"]);
        assert_eq!(sub.edge_count(), 2);
    }
}
