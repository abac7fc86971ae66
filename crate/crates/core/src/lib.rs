//! Semantic-relatedness graphs built from raw search query logs.
//!
//! Queries are bucketed into nouns and verbs, scored pairwise with Wu-Palmer
//! similarity over WordNet plus an edit-distance bonus, and connected when the
//! score clears a threshold. The resulting graph carries degree, betweenness
//! and cluster metrics and can be exported as GEXF, DOT, an adjacency matrix
//! or a JSON report.

pub mod error;
pub mod graph;
pub mod pipeline;
pub mod scalar;
pub mod similarity;
pub mod textprep;
pub mod wordnet;

pub use error::{Error, Result};
pub use graph::{
    betweenness_centrality, build_graph, clusters, modularity, node_metrics, rank_nodes,
    top_k_subgraph, ClusterMethod, Clustering, Edge, GraphNode, NodeMetrics, QueryGraph, RankKey,
};
pub use pipeline::{
    load_queries, run_build, score_all_pairs, BuildSummary, GraphAnalysis, RunConfig, ScoreCache,
};
pub use scalar::Weight;
pub use similarity::{
    bucket_pair_weight, edit_distance, jaccard_similarity, semantic_similarity, PairScore,
    ScoringParams, SenseSimilarity,
};
pub use textprep::{analyze_query, is_cardinal, is_url, PosBucket, QueryAnalysis, Term, Token};
pub use wordnet::{load_wordnet, Pos, Subsumer, Synset, SynsetId, WordNetDb};

pub type PairScore64 = PairScore<f64>;
pub type PairScore32 = PairScore<f32>;
pub type QueryGraph64 = QueryGraph<f64>;
pub type QueryGraph32 = QueryGraph<f32>;
pub type NodeMetrics64 = NodeMetrics<f64>;
pub type NodeMetrics32 = NodeMetrics<f32>;
pub type Clustering64 = Clustering<f64>;
pub type Clustering32 = Clustering<f32>;
pub type RunConfig64 = RunConfig<f64>;
pub type RunConfig32 = RunConfig<f32>;
pub type GraphAnalysis64 = GraphAnalysis<f64>;
pub type GraphAnalysis32 = GraphAnalysis<f32>;
