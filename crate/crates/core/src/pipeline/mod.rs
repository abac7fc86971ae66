//! End-to-end runs: ingest a query log, score every pair, build and analyze
//! the graph, and write the output files.

mod cache;
mod export;

use std::fs;
use std::path::{Path, PathBuf};

use dashmap::DashMap;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{
    build_graph, clusters, node_metrics, ClusterMethod, Clustering, GraphNode, NodeMetrics,
    QueryGraph, RankKey,
};
use crate::scalar::{quantize9, Weight};
use crate::similarity::{semantic_similarity, PairScore, ScoringParams, SenseSimilarity};
use crate::textprep::{analyze_query, is_url, normalize, QueryAnalysis};
use crate::wordnet::{SynsetId, WordNetDb};

pub use self::cache::{
    params_digest, query_digest, read_edge_cache, write_edge_cache, ScoreCache, CACHE_HEADER,
    CACHE_VERSION,
};
pub use self::export::{
    report_json, report_string, write_adjacency_csv, write_dot, write_gexf, write_report, ColorRgb,
};

/// Every tunable of a run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig<T = f64> {
    /// Pairs scoring strictly above this become edges.
    pub threshold: T,
    pub bonus_cutoff: usize,
    pub bonus_value: T,
    pub workers: usize,
    pub cluster_method: ClusterMethod,
    pub normalize_betweenness: bool,
    /// Node size range for the degree encoding.
    pub size_range: (T, T),
    /// Edge thickness range for the weight encoding.
    pub edge_width_range: (T, T),
    /// Restrict the analysis to the `k` top-ranked nodes.
    pub top_k: Option<usize>,
    pub top_k_by: RankKey,
}

impl<T: Weight> Default for RunConfig<T> {
    fn default() -> Self {
        let f = T::from_f64_lossy;
        RunConfig {
            threshold: f(0.4),
            bonus_cutoff: 2,
            bonus_value: f(0.2),
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            cluster_method: ClusterMethod::Modularity,
            normalize_betweenness: false,
            size_range: (f(10.0), f(50.0)),
            edge_width_range: (f(1.0), f(10.0)),
            top_k: None,
            top_k_by: RankKey::Betweenness,
        }
    }
}

impl<T: Weight> RunConfig<T> {
    // Negated comparisons so that NaN is rejected too.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if !(self.threshold >= T::zero()) {
            return bad(format!("threshold must be >= 0, got {}", self.threshold));
        }
        if !(self.bonus_value >= T::zero()) {
            return bad(format!(
                "bonus value must be >= 0, got {}",
                self.bonus_value
            ));
        }
        if self.workers == 0 {
            return bad("workers must be at least 1".into());
        }
        for (name, (lo, hi)) in [
            ("size", self.size_range),
            ("edge width", self.edge_width_range),
        ] {
            if !(lo < hi) {
                return bad(format!("{name} range needs min < max, got {lo}..{hi}"));
            }
        }
        if self.top_k == Some(0) {
            return bad("top-k must be at least 1".into());
        }
        Ok(())
    }

    pub fn scoring_params(&self) -> ScoringParams<T> {
        ScoringParams {
            bonus_cutoff: self.bonus_cutoff,
            bonus_value: self.bonus_value,
        }
    }

    fn thread_pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::Config(format!("cannot start {} workers: {e}", self.workers)))
    }
}

/// Strips a trailing tab-separated count column, if any.
fn strip_count_field(line: &str) -> &str {
    match line.rsplit_once('\t') {
        Some((query, count))
            if !count.trim().is_empty() && count.trim().bytes().all(|b| b.is_ascii_digit()) =>
        {
            query
        }
        _ => line,
    }
}

/// Analyzes a query log held in memory. Blank lines, repeats (after
/// normalization) and single-token URL queries are dropped; ids follow the
/// order of the surviving lines.
pub fn parse_query_log(text: &str, db: &WordNetDb) -> Result<Vec<QueryAnalysis>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for line in text.lines() {
        let raw = strip_count_field(line);
        let normalized = normalize(raw);
        if normalized.is_empty() || is_url(&normalized) || !seen.insert(normalized.clone()) {
            continue;
        }
        out.push(analyze_query(raw, db, out.len() as u32)?);
    }
    Ok(out)
}

pub fn load_queries(path: impl AsRef<Path>, db: &WordNetDb) -> Result<Vec<QueryAnalysis>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let analyses = parse_query_log(&text, db)?;
    if analyses.is_empty() {
        return Err(Error::NoQueries { path: path.into() });
    }
    Ok(analyses)
}

pub fn graph_nodes(analyses: &[QueryAnalysis]) -> Vec<GraphNode> {
    analyses
        .iter()
        .map(|q| GraphNode {
            id: q.query_id,
            text: q.normalized.clone(),
        })
        .collect()
}

/// Wu-Palmer scores memoized per ordered sense pair. Safe to share between
/// workers: racing inserts store the same value.
pub struct MemoizedWup<'a, T> {
    db: &'a WordNetDb,
    memo: DashMap<(SynsetId, SynsetId), Option<T>>,
}

impl<'a, T: Weight> MemoizedWup<'a, T> {
    pub fn new(db: &'a WordNetDb) -> Self {
        MemoizedWup {
            db,
            memo: DashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }
}

impl<T: Weight> SenseSimilarity<T> for MemoizedWup<'_, T> {
    fn wup(&self, a: SynsetId, b: SynsetId) -> Option<T> {
        if let Some(hit) = self.memo.get(&(a, b)) {
            return *hit;
        }
        let value = self.db.wup_similarity(a, b);
        self.memo.insert((a, b), value);
        value
    }
}

/// Scores all `n(n-1)/2` pairs, sorted by `(a, b)`, in the current rayon
/// pool. The result does not depend on the number of threads.
pub fn score_pairs<T: Weight, S: SenseSimilarity<T> + Sync>(
    analyses: &[QueryAnalysis],
    senses: &S,
    params: &ScoringParams<T>,
) -> Vec<PairScore<T>> {
    let mut sorted: Vec<&QueryAnalysis> = analyses.iter().collect();
    sorted.sort_by_key(|q| q.query_id);
    let sorted = &sorted;
    (0..sorted.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            sorted[i + 1..]
                .iter()
                .map(move |q2| semantic_similarity(sorted[i], q2, senses, params))
        })
        .collect()
}

/// [`score_pairs`] on a dedicated pool of `config.workers` threads, with
/// memoized Wu-Palmer lookups.
pub fn score_all_pairs<T: Weight>(
    analyses: &[QueryAnalysis],
    db: &WordNetDb,
    config: &RunConfig<T>,
) -> Result<Vec<PairScore<T>>> {
    config.validate()?;
    let memo = MemoizedWup::new(db);
    let params = config.scoring_params();
    Ok(config
        .thread_pool()?
        .install(|| score_pairs(analyses, &memo, &params)))
}

/// Scores as they read back from a cache file.
pub fn quantize_scores<T: Weight>(scores: &mut [PairScore<T>]) {
    for s in scores {
        s.noun_weight = quantize9(s.noun_weight);
        s.verb_weight = quantize9(s.verb_weight);
        s.total = quantize9(s.total);
    }
}

/// A graph together with everything the exports need.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphAnalysis<T> {
    pub graph: QueryGraph<T>,
    pub metrics: NodeMetrics<T>,
    pub clustering: Clustering<T>,
}

impl<T: Weight> GraphAnalysis<T> {
    /// Computes metrics and clusters, first narrowing to the top-k subgraph
    /// when the config asks for one.
    pub fn new(graph: QueryGraph<T>, config: &RunConfig<T>) -> Result<Self> {
        let metrics = node_metrics(&graph, true, config.normalize_betweenness);
        let (graph, metrics) = match config.top_k {
            Some(k) if k < graph.node_count() => {
                let sub = crate::graph::top_k_subgraph(&graph, &metrics, config.top_k_by, k)?;
                let m = node_metrics(&sub, true, config.normalize_betweenness);
                (sub, m)
            }
            _ => (graph, metrics),
        };
        let clustering = clusters(&graph, config.cluster_method);
        Ok(GraphAnalysis {
            graph,
            metrics,
            clustering,
        })
    }

    pub fn betweenness(&self) -> &[T] {
        self.metrics
            .betweenness
            .as_deref()
            .expect("analysis always computes betweenness")
    }
}

/// Thresholds scores into a graph and analyzes it.
pub fn analyze_scores<T: Weight>(
    nodes: Vec<GraphNode>,
    scores: &[PairScore<T>],
    config: &RunConfig<T>,
) -> Result<GraphAnalysis<T>> {
    config.validate()?;
    let graph = build_graph(nodes, scores, config.threshold)?;
    config
        .thread_pool()?
        .install(|| GraphAnalysis::new(graph, config))
}

pub const SCORES_FILE: &str = "scores.csv";
pub const GEXF_FILE: &str = "graph.gexf";
pub const DOT_FILE: &str = "graph.dot";
pub const ADJACENCY_FILE: &str = "adjacency.csv";
pub const REPORT_FILE: &str = "report.json";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildSummary {
    pub queries: usize,
    pub pairs: usize,
    pub nodes: usize,
    pub edges: usize,
    pub clusters: usize,
    pub cache: PathBuf,
    /// False when scores came from an existing cache.
    pub scored: bool,
}

/// Runs the whole pipeline and writes the cache, GEXF, DOT, adjacency CSV
/// and JSON report into `out_dir`.
///
/// With `cache` naming an existing file, its scores are reused after checking
/// that it was produced from the same queries and scoring parameters.
/// Otherwise scores are computed and written to `cache`, or to
/// `out_dir/scores.csv` when no cache path is given.
pub fn run_build<T: Weight>(
    input: &Path,
    db: &WordNetDb,
    config: &RunConfig<T>,
    out_dir: &Path,
    cache: Option<&Path>,
) -> Result<BuildSummary> {
    config.validate()?;
    let analyses = load_queries(input, db)?;
    let nodes = graph_nodes(&analyses);
    let params = config.scoring_params();
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;

    let cache_path = cache.map_or_else(|| out_dir.join(SCORES_FILE), Path::to_path_buf);
    let reuse = cache.is_some() && cache_path.exists();
    let scores = if reuse {
        let cached: ScoreCache<T> = read_edge_cache(&cache_path)?;
        cached.check_inputs(&cache_path, &query_digest(&nodes), &params_digest(&params))?;
        cached.scores
    } else {
        let mut scores = score_all_pairs(&analyses, db, config)?;
        write_edge_cache(&cache_path, &nodes, &params, &scores)?;
        quantize_scores(&mut scores);
        scores
    };

    let pairs = scores.len();
    let analysis = analyze_scores(nodes, &scores, config)?;
    drop(scores);

    export::write_file(&out_dir.join(GEXF_FILE), |w| {
        write_gexf(w, &analysis, config)
    })?;
    export::write_file(&out_dir.join(DOT_FILE), |w| write_dot(w, &analysis, config))?;
    export::write_file(&out_dir.join(ADJACENCY_FILE), |w| {
        write_adjacency_csv(w, &analysis.graph)
    })?;
    write_report(&out_dir.join(REPORT_FILE), &analysis, config)?;

    Ok(BuildSummary {
        queries: analyses.len(),
        pairs,
        nodes: analysis.graph.node_count(),
        edges: analysis.graph.edge_count(),
        clusters: analysis.clustering.cluster_count(),
        cache: cache_path,
        scored: !reuse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_columns_are_stripped() {
        assert_eq!(strip_count_field("dog food\t12"), "dog food");
        assert_eq!(strip_count_field("dog food\t"), "dog food\t");
        assert_eq!(strip_count_field("dog\tfood"), "dog\tfood");
        assert_eq!(strip_count_field("dog food"), "dog food");
    }

    #[test]
    fn config_validation() {
        let ok = RunConfig::<f64>::default();
        assert!(ok.validate().is_ok());
        let bad = [
            RunConfig {
                threshold: -0.1,
                ..ok.clone()
            },
            RunConfig {
                bonus_value: -1.0,
                ..ok.clone()
            },
            RunConfig {
                workers: 0,
                ..ok.clone()
            },
            RunConfig {
                size_range: (5.0, 5.0),
                ..ok.clone()
            },
            RunConfig {
                edge_width_range: (2.0, 1.0),
                ..ok.clone()
            },
            RunConfig {
                top_k: Some(0),
                ..ok.clone()
            },
        ];
        for cfg in bad {
            assert!(matches!(cfg.validate(), Err(Error::Config(_))), "{cfg:?}");
        }
    }
}
