use super::{betweenness_centrality, QueryGraph};
use crate::scalar::Weight;

/// Per-node metrics, indexed by node position.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeMetrics<T> {
    pub degree: Vec<usize>,
    pub weighted_degree: Vec<T>,
    pub betweenness: Option<Vec<T>>,
}

/// Degree and weighted degree for every node; betweenness too when
/// `betweenness` is set (optionally normalized).
pub fn node_metrics<T: Weight>(
    g: &QueryGraph<T>,
    betweenness: bool,
    normalize: bool,
) -> NodeMetrics<T> {
    let n = g.node_count();
    let degree = (0..n).map(|p| g.adjacency()[p].len()).collect();
    let weighted_degree = (0..n)
        .map(|p| g.neighbors(p).map(|(_, w)| w).sum())
        .collect();
    NodeMetrics {
        degree,
        weighted_degree,
        betweenness: betweenness.then(|| betweenness_centrality(g, normalize)),
    }
}
