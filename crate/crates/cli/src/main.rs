use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use querynet::pipeline::{
    analyze_scores, read_edge_cache, report_string, write_adjacency_csv, write_dot, write_gexf,
};
use querynet::scalar::fmt9;
use querynet::wordnet::WORDNET_DIR_ENV;
use querynet::{
    analyze_query, jaccard_similarity, load_wordnet, run_build, semantic_similarity, ClusterMethod,
    Error, GraphAnalysis, RankKey, RunConfig,
};

/// Semantic-relatedness graphs from search query logs.
#[derive(Parser, Debug)]
#[command(name = "querynet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Score every query pair and write the cache, GEXF, DOT, adjacency CSV and JSON report.
    Build(BuildArgs),
    /// Score a single pair of queries.
    Sim(SimArgs),
    /// Print the JSON report for a cached score file.
    Metrics(MetricsArgs),
    /// Print cluster assignments for a cached score file.
    Cluster(ClusterArgs),
    /// Export the graph of a cached score file.
    Export(ExportArgs),
}

#[derive(Args, Debug)]
struct WordNetArgs {
    /// WordNet 3.0 database directory.
    #[arg(long, env = WORDNET_DIR_ENV, value_name = "DIR")]
    wordnet_dir: PathBuf,
}

#[derive(Args, Debug)]
struct ScoringArgs {
    /// Largest edit distance that earns the spelling bonus.
    #[arg(long, default_value_t = 2)]
    bonus_cutoff: usize,
    /// Bonus added per word pair within the cutoff.
    #[arg(long, default_value_t = 0.2)]
    bonus_value: f64,
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Pairs scoring strictly above this are connected.
    #[arg(long, default_value_t = 0.4)]
    threshold: f64,
    #[arg(long, value_enum, default_value_t = Method::Modularity)]
    method: Method,
    /// Divide betweenness by (n-1)(n-2)/2.
    #[arg(long)]
    normalize_betweenness: bool,
    /// Keep only the K top-ranked nodes.
    #[arg(long, value_name = "K")]
    top_k: Option<usize>,
    /// Ranking used by --top-k.
    #[arg(long, value_enum, default_value_t = By::Betweenness)]
    by: By,
}

#[derive(Args, Debug)]
struct BuildArgs {
    /// Query log, one query per line.
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    #[command(flatten)]
    wordnet: WordNetArgs,
    #[command(flatten)]
    scoring: ScoringArgs,
    #[command(flatten)]
    graph: GraphArgs,
    /// Worker threads for scoring and betweenness (default: all CPUs).
    #[arg(long)]
    workers: Option<usize>,
    /// Score cache to reuse if present (must match the queries and
    /// parameters) or to create. Defaults to OUT_DIR/scores.csv.
    #[arg(long, value_name = "FILE")]
    cache: Option<PathBuf>,
    #[arg(long, value_name = "DIR")]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct SimArgs {
    query1: String,
    query2: String,
    #[command(flatten)]
    wordnet: WordNetArgs,
    #[command(flatten)]
    scoring: ScoringArgs,
}

#[derive(Args, Debug)]
struct CacheArgs {
    /// Score cache written by `querynet build`.
    #[arg(long, value_name = "FILE")]
    cache: PathBuf,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args, Debug)]
struct MetricsArgs {
    #[command(flatten)]
    cache: CacheArgs,
    #[command(flatten)]
    graph: GraphArgs,
}

#[derive(Args, Debug)]
struct ClusterArgs {
    #[command(flatten)]
    cache: CacheArgs,
    #[command(flatten)]
    graph: GraphArgs,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[command(flatten)]
    cache: CacheArgs,
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, value_enum)]
    format: Format,
    /// Output file (default: stdout).
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Components,
    Modularity,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum By {
    Betweenness,
    Degree,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Gexf,
    Dot,
    Adjacency,
}

impl GraphArgs {
    fn apply(&self, config: &mut RunConfig) {
        config.threshold = self.threshold;
        config.cluster_method = match self.method {
            Method::Components => ClusterMethod::Components,
            Method::Modularity => ClusterMethod::Modularity,
        };
        config.normalize_betweenness = self.normalize_betweenness;
        config.top_k = self.top_k;
        config.top_k_by = match self.by {
            By::Betweenness => RankKey::Betweenness,
            By::Degree => RankKey::Degree,
        };
    }
}

impl ScoringArgs {
    fn apply(&self, config: &mut RunConfig) {
        config.bonus_cutoff = self.bonus_cutoff;
        config.bonus_value = self.bonus_value;
    }
}

fn config(workers: Option<usize>) -> RunConfig {
    let mut config = RunConfig::default();
    if let Some(w) = workers {
        config.workers = w;
    }
    config
}

fn stdout_error(e: io::Error) -> Error {
    Error::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    }
}

fn build(args: BuildArgs) -> Result<(), Error> {
    let mut cfg = config(args.workers);
    args.scoring.apply(&mut cfg);
    args.graph.apply(&mut cfg);
    cfg.validate()?;
    let db = load_wordnet(&args.wordnet.wordnet_dir)?;
    let summary = run_build(&args.input, &db, &cfg, &args.out_dir, args.cache.as_deref())?;
    eprintln!(
        "{} queries, {} pairs {} ({}), {} nodes, {} edges, {} clusters -> {}",
        summary.queries,
        summary.pairs,
        if summary.scored {
            "scored"
        } else {
            "read from cache"
        },
        summary.cache.display(),
        summary.nodes,
        summary.edges,
        summary.clusters,
        args.out_dir.display()
    );
    Ok(())
}

fn sim(args: SimArgs) -> Result<(), Error> {
    let mut cfg = config(None);
    args.scoring.apply(&mut cfg);
    cfg.validate()?;
    let db = load_wordnet(&args.wordnet.wordnet_dir)?;
    let q1 = analyze_query(&args.query1, &db, 0)?;
    let q2 = analyze_query(&args.query2, &db, 1)?;
    let score = semantic_similarity(&q1, &q2, &db, &cfg.scoring_params());
    let jaccard: f64 = jaccard_similarity(&q1, &q2);
    println!("noun_weight\t{}", fmt9(score.noun_weight));
    println!("verb_weight\t{}", fmt9(score.verb_weight));
    println!("total\t{}", fmt9(score.total));
    println!("jaccard\t{}", fmt9(jaccard));
    Ok(())
}

fn analyze_cache(
    cache: &CacheArgs,
    graph: &GraphArgs,
) -> Result<(GraphAnalysis<f64>, RunConfig), Error> {
    let mut cfg = config(cache.workers);
    graph.apply(&mut cfg);
    cfg.validate()?;
    let scores = read_edge_cache::<f64>(&cache.cache)?;
    let analysis = analyze_scores(scores.queries, &scores.scores, &cfg)?;
    Ok((analysis, cfg))
}

fn metrics(args: MetricsArgs) -> Result<(), Error> {
    let (analysis, cfg) = analyze_cache(&args.cache, &args.graph)?;
    io::stdout()
        .write_all(report_string(&analysis, &cfg).as_bytes())
        .map_err(stdout_error)
}

fn cluster(args: ClusterArgs) -> Result<(), Error> {
    let (analysis, _) = analyze_cache(&args.cache, &args.graph)?;
    let c = &analysis.clustering;
    let mut out = BufWriter::new(io::stdout().lock());
    let mut body = || -> io::Result<()> {
        writeln!(
            out,
            "# method={} clusters={} modularity={}",
            c.method,
            c.cluster_count(),
            fmt9(c.modularity_score)
        )?;
        writeln!(out, "id\tcluster\tquery")?;
        for (node, cluster) in analysis.graph.nodes().iter().zip(&c.assignment) {
            writeln!(out, "{}\t{}\t{}", node.id, cluster, node.text)?;
        }
        out.flush()
    };
    body().map_err(stdout_error)
}

fn export(args: ExportArgs) -> Result<(), Error> {
    let (analysis, cfg) = analyze_cache(&args.cache, &args.graph)?;
    let write = |w: &mut dyn Write| -> io::Result<()> {
        let mut w = BufWriter::new(w);
        match args.format {
            Format::Gexf => write_gexf(&mut w, &analysis, &cfg)?,
            Format::Dot => write_dot(&mut w, &analysis, &cfg)?,
            Format::Adjacency => write_adjacency_csv(&mut w, &analysis.graph)?,
        }
        w.flush()
    };
    match &args.output {
        Some(path) => {
            let mut file = std::fs::File::create(path).map_err(|e| io_error(path, e))?;
            write(&mut file).map_err(|e| io_error(path, e))
        }
        None => write(&mut io::stdout().lock()).map_err(stdout_error),
    }
}

fn io_error(path: &Path, source: io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Build(a) => build(a),
        Command::Sim(a) => sim(a),
        Command::Metrics(a) => metrics(a),
        Command::Cluster(a) => cluster(a),
        Command::Export(a) => export(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        // Reader went away, as with `| head`.
        Err(Error::Io { source, .. }) if source.kind() == io::ErrorKind::BrokenPipe => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("querynet: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
