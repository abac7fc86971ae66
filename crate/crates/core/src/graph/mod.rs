//! Undirected query graphs and the metrics computed on them.

mod betweenness;
mod cluster;
mod metrics;
mod subgraph;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::scalar::Weight;
use crate::similarity::PairScore;

pub use self::betweenness::betweenness_centrality;
pub use self::cluster::{clusters, modularity, ClusterMethod, Clustering};
pub use self::metrics::{node_metrics, NodeMetrics};
pub use self::subgraph::{rank_nodes, top_k_subgraph, RankKey};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphNode {
    pub id: u32,
    pub text: String,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge<T> {
    pub a: u32,
    pub b: u32,
    pub weight: T,
}

/// Nodes sorted by query id, edges sorted by `(a, b)` with `a < b`.
/// Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct QueryGraph<T> {
    nodes: Vec<GraphNode>,
    edges: Vec<Edge<T>>,
    /// Per node position: `(neighbor position, edge index)`, ascending.
    adjacency: Vec<Vec<(usize, usize)>>,
    positions: HashMap<u32, usize>,
}

impl<T: Weight> QueryGraph<T> {
    /// Builds a graph from explicit edges. Edges may arrive in any order and
    /// with endpoints in either order; self-loops, duplicates and unknown
    /// endpoints are rejected.
    pub fn from_edges(mut nodes: Vec<GraphNode>, edges: Vec<Edge<T>>) -> Result<Self> {
        nodes.sort_by_key(|n| n.id);
        let mut positions = HashMap::with_capacity(nodes.len());
        for (i, n) in nodes.iter().enumerate() {
            if positions.insert(n.id, i).is_some() {
                return Err(Error::Config(format!("node id {} appears twice", n.id)));
            }
        }

        let mut edges: Vec<Edge<T>> = edges
            .into_iter()
            .map(|e| Edge {
                a: e.a.min(e.b),
                b: e.a.max(e.b),
                weight: e.weight,
            })
            .collect();
        edges.sort_by_key(|e| (e.a, e.b));

        let mut adjacency = vec![Vec::new(); nodes.len()];
        for (k, e) in edges.iter().enumerate() {
            if e.a == e.b {
                return Err(Error::InvalidPair { a: e.a, b: e.b });
            }
            if k > 0 && (edges[k - 1].a, edges[k - 1].b) == (e.a, e.b) {
                return Err(Error::DuplicatePair { a: e.a, b: e.b });
            }
            let pa = *positions.get(&e.a).ok_or(Error::UnknownNode { id: e.a })?;
            let pb = *positions.get(&e.b).ok_or(Error::UnknownNode { id: e.b })?;
            adjacency[pa].push((pb, k));
            adjacency[pb].push((pa, k));
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }

        Ok(QueryGraph {
            nodes,
            edges,
            adjacency,
            positions,
        })
    }

    pub fn nodes(&self) -> &[GraphNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Position of query `id` in [`QueryGraph::nodes`].
    pub fn position(&self, id: u32) -> Option<usize> {
        self.positions.get(&id).copied()
    }

    /// Neighbor positions and edge weights of the node at `pos`.
    pub fn neighbors(&self, pos: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        self.adjacency[pos]
            .iter()
            .map(move |&(n, k)| (n, self.edges[k].weight))
    }

    pub(crate) fn adjacency(&self) -> &[Vec<(usize, usize)>] {
        &self.adjacency
    }

    /// Subgraph induced by the nodes at `positions`.
    pub fn induced(&self, positions: &[usize]) -> Self {
        let keep: Vec<GraphNode> = positions.iter().map(|&p| self.nodes[p].clone()).collect();
        let mut inside = vec![false; self.nodes.len()];
        for &p in positions {
            inside[p] = true;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| inside[self.positions[&e.a]] && inside[self.positions[&e.b]])
            .copied()
            .collect();
        Self::from_edges(keep, edges).expect("induced subgraph of a valid graph is valid")
    }
}

/// Connects every scored pair whose total is strictly above `threshold`.
/// Every node is kept, isolated or not.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn build_graph<T: Weight>(
    nodes: Vec<GraphNode>,
    scores: &[PairScore<T>],
    threshold: T,
) -> Result<QueryGraph<T>> {
    if !(threshold >= T::zero()) {
        return Err(Error::Config(format!(
            "threshold must be >= 0, got {threshold}"
        )));
    }
    check_unique_pairs(scores)?;
    let edges = scores
        .iter()
        .filter(|s| s.total > threshold)
        .map(|s| Edge {
            a: s.a,
            b: s.b,
            weight: s.total,
        })
        .collect();
    QueryGraph::from_edges(nodes, edges)
}

fn check_unique_pairs<T>(scores: &[PairScore<T>]) -> Result<()> {
    let key = |s: &PairScore<T>| (s.a.min(s.b), s.a.max(s.b));
    let sorted = scores.windows(2).all(|w| key(&w[0]) < key(&w[1]));
    if sorted {
        return Ok(());
    }
    let mut keys: Vec<(u32, u32)> = scores.iter().map(key).collect();
    keys.sort_unstable();
    match keys.windows(2).find(|w| w[0] == w[1]) {
        Some(w) => Err(Error::DuplicatePair {
            a: w[0].0,
            b: w[0].1,
        }),
        None => Ok(()),
    }
}
