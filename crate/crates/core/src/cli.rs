//! Command-line front end: `build`, `analyze`, `temporal`, `drill`, `export`.
//!
//! Every command resolves its settings (config file, then flags, then
//! defaults), computes all artifacts in memory, and only then writes them,
//! together with the resolved `config.json`. Exit codes: 0 success, 1 bad
//! configuration, 2 bad or missing data, 3 unknown edge.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::builder::{
    build_static, mean_edge_weight, threshold, BuildConfig, FocalRule, FosGraph, MeanWeight,
    Threshold,
};
use crate::centrality::{centrality_report, CentralityParams, CentralityReport};
use crate::closeread::{
    keyword_frequencies, papers_for_edge, papers_for_temporal_edge, subfield_frequencies,
    EdgeProvenance, Stopwords,
};
use crate::community::{louvain, summarize_communities, LouvainConfig};
use crate::corpus::{load_corpus, IngestConfig, IngestStats};
use crate::error::Error;
use crate::export;
use crate::roles::{fit_roles, summarize_roles, RoleParams, Selection};
use crate::temporal::{
    build_temporal, restrict_post_field, top_k_edges, RestrictMode, SplitRule, TemporalConfig,
    TemporalFosGraph,
};

pub const SEED_ENV: &str = "FOSNET_SEED";
pub const DEFAULT_SEED: u64 = 42;
const CONFIG_FILE: &str = "config.json";
const GRAPH_FILE: &str = "graph.json";
const TEMPORAL_FILE: &str = "temporal.json";

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownEdge { .. } => 3,
            Error::InvalidParameter(_) | Error::OverlappingSplit(_) => 1,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "fosnet",
    version,
    about = "Field-of-study networks from paper metadata"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the static field network from a JSONL corpus.
    Build(BuildArgs),
    /// Centralities, communities and structural roles of a built network.
    Analyze(AnalyzeArgs),
    /// Build the directed pre/post network.
    Temporal(TemporalArgs),
    /// Papers, keywords and subfields behind one edge.
    Drill(DrillArgs),
    /// Convert a built network to GraphML, DOT, CSV or JSONL.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Keep only fields at this hierarchy level.
    #[arg(long)]
    pub level: Option<u32>,
    /// Inclusive year window, `Y1-Y2`.
    #[arg(long, value_parser = parse_range)]
    pub window: Option<(i32, i32)>,
    /// Abort on malformed lines instead of skipping them.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub ingest: IngestArgs,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// off, any or both.
    #[arg(long)]
    pub focal: Option<FocalRule>,
    /// none, mean or fixed:V.
    #[arg(long)]
    pub threshold: Option<Threshold>,
    #[arg(long)]
    pub keep_isolates: bool,
    /// Drop per-edge witnesses (disables drill-down).
    #[arg(long)]
    pub no_witnesses: bool,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Output directory of `fosnet build`.
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Comma-separated: centrality, communities, roles.
    #[arg(long, value_delimiter = ',')]
    pub analysis: Vec<Analysis>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub resolution: Option<f64>,
    /// Smallest community reported as such.
    #[arg(long)]
    pub min_community: Option<usize>,
    /// Smallest discipline share listed for a community.
    #[arg(long)]
    pub discipline_cutoff: Option<f64>,
    /// `KMIN:KMAX`.
    #[arg(long, value_parser = parse_k_range)]
    pub k_range: Option<(usize, usize)>,
    /// knee or max.
    #[arg(long)]
    pub selection: Option<Selection>,
    #[arg(long)]
    pub dims: Option<usize>,
    #[arg(long)]
    pub walks: Option<usize>,
    #[arg(long)]
    pub walk_length: Option<usize>,
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long)]
    pub epochs: Option<usize>,
    #[arg(long)]
    pub negative: Option<usize>,
    /// Frequent-token downsampling threshold for embedding training; 0 disables.
    #[arg(long)]
    pub sample: Option<f64>,
    #[arg(long)]
    pub max_layer: Option<usize>,
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Compare run-length compressed degree sequences.
    #[arg(long)]
    pub compress_sequences: bool,
    /// Only compare nodes of similar degree.
    #[arg(long)]
    pub limit_pairs: bool,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TemporalArgs {
    #[command(flatten)]
    pub ingest: IngestArgs,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// `focal`, `focal:Y1-Y2` or `years:Y1-Y2:Y3-Y4`.
    #[arg(long)]
    pub split: Option<SplitRule>,
    /// Keep only the k heaviest edges.
    #[arg(long)]
    pub top_k: Option<usize>,
    /// Keep only flows into this post-period field.
    #[arg(long)]
    pub restrict: Option<String>,
    /// witness or endpoint.
    #[arg(long)]
    pub restrict_mode: Option<RestrictMode>,
    #[arg(long)]
    pub no_witnesses: bool,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DrillArgs {
    /// Output directory of `fosnet build` or `fosnet temporal`.
    #[arg(long)]
    pub graph: PathBuf,
    /// `SRC,DST` by field id or name.
    #[arg(long)]
    pub edge: String,
    /// Report the N most frequent keywords.
    #[arg(long)]
    pub keywords: Option<usize>,
    /// Report field frequencies at this level.
    #[arg(long)]
    pub subfields: Option<u32>,
    /// One stopword per line, replacing the bundled list.
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
    /// Also write the report as JSON files here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// Output directory of `fosnet build` or `fosnet temporal`.
    #[arg(long)]
    pub graph: PathBuf,
    /// graphml, dot, csv or jsonl.
    #[arg(long)]
    pub format: Format,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Analysis {
    Centrality,
    Communities,
    Roles,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Graphml,
    Dot,
    Csv,
    Jsonl,
}

fn parse_range(s: &str) -> std::result::Result<(i32, i32), String> {
    let (a, b) = s.split_once('-').ok_or("expected Y1-Y2")?;
    let a: i32 = a.trim().parse().map_err(|_| "expected Y1-Y2")?;
    let b: i32 = b.trim().parse().map_err(|_| "expected Y1-Y2")?;
    if a > b {
        return Err(format!("empty range {a}-{b}"));
    }
    Ok((a, b))
}

fn parse_k_range(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or("expected KMIN:KMAX")?;
    Ok((
        a.trim().parse().map_err(|_| "expected KMIN:KMAX")?,
        b.trim().parse().map_err(|_| "expected KMIN:KMAX")?,
    ))
}

/// Resolved settings of `fosnet build`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BuildRun {
    pub input: PathBuf,
    pub ingest: IngestConfig,
    pub build: BuildConfig,
}

/// Resolved settings of `fosnet analyze`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AnalyzeRun {
    pub graph: PathBuf,
    pub analyses: Vec<Analysis>,
    /// Master seed shared by community detection and role fitting.
    pub seed: Option<u64>,
    pub centrality: CentralityParams,
    pub communities: LouvainConfig,
    pub discipline_cutoff: f64,
    pub roles: RoleParams,
}

/// Resolved settings of `fosnet temporal`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TemporalRun {
    pub input: PathBuf,
    pub ingest: IngestConfig,
    pub temporal: TemporalConfig,
    pub top_k: Option<usize>,
    pub restrict: Option<String>,
    pub restrict_mode: RestrictMode,
}

const DEFAULT_DISCIPLINE_CUTOFF: f64 = 0.2;

impl Default for AnalyzeRun {
    fn default() -> Self {
        Self {
            graph: PathBuf::new(),
            analyses: Vec::new(),
            seed: None,
            centrality: CentralityParams::default(),
            communities: LouvainConfig::default(),
            discipline_cutoff: DEFAULT_DISCIPLINE_CUTOFF,
            roles: RoleParams::default(),
        }
    }
}

fn read_config<T: DeserializeOwned + Default>(path: Option<&Path>) -> CliResult<T> {
    let Some(path) = path else {
        return Ok(T::default());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|_| Error::MissingArtifact(path.to_path_buf()))?;
    serde_json::from_str(&text).map_err(|e| CliError::from(Error::from(e)))
}

fn apply_ingest(
    ingest: &mut IngestConfig,
    input: &mut PathBuf,
    args: &IngestArgs,
) -> CliResult<()> {
    if let Some(p) = &args.input {
        *input = p.clone();
    }
    if input.as_os_str().is_empty() {
        return Err(CliError::config("no input corpus given (--input)"));
    }
    if args.level.is_some() {
        ingest.level = args.level;
    }
    if args.window.is_some() {
        ingest.window = args.window;
    }
    ingest.strict |= args.strict;
    // recorded absolute so that later commands find it from anywhere
    *input = fs::canonicalize(&*input).map_err(|e| CliError::from(Error::io(input.clone(), e)))?;
    Ok(())
}

fn check_workers(workers: usize) -> CliResult<()> {
    if workers == 0 {
        return Err(CliError::config("--workers must be >= 1"));
    }
    Ok(())
}

/// Artifacts of one command, written together once everything succeeded.
#[derive(Default)]
struct Artifacts(BTreeMap<String, Vec<u8>>);

impl Artifacts {
    fn add(
        &mut self,
        name: &str,
        write: impl FnOnce(&mut Vec<u8>) -> crate::Result<()>,
    ) -> CliResult<()> {
        let mut buf = Vec::new();
        write(&mut buf)?;
        self.0.insert(name.to_string(), buf);
        Ok(())
    }

    fn json<T: Serialize + ?Sized>(&mut self, name: &str, value: &T) -> CliResult<()> {
        self.add(name, |b| export::write_json(value, b))
    }

    fn text(&mut self, name: &str, text: String) {
        self.0.insert(name.to_string(), text.into_bytes());
    }

    fn write(self, dir: &Path) -> CliResult<()> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for (name, bytes) in self.0 {
            let path = dir.join(name);
            fs::write(&path, bytes).map_err(|e| Error::io(path, e))?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct BuildSummary<'a> {
    papers: usize,
    authors: usize,
    nodes_before_threshold: usize,
    edges_before_threshold: usize,
    mean_weight: Option<MeanWeight>,
    mean_weight_value: Option<f64>,
    threshold_rule: Threshold,
    threshold_used: Option<f64>,
    nodes: usize,
    edges: usize,
    witnesses_retained: bool,
    ingest: &'a IngestStats,
}

fn cmd_build(args: BuildArgs) -> CliResult<String> {
    let mut run: BuildRun = read_config(args.config.as_deref())?;
    apply_ingest(&mut run.ingest, &mut run.input, &args.ingest)?;
    if let Some(f) = args.focal {
        run.build.focal = f;
    }
    if let Some(t) = args.threshold {
        run.build.threshold = t;
    }
    run.build.drop_isolates &= !args.keep_isolates;
    run.build.retain_witnesses &= !args.no_witnesses;
    if let Some(w) = args.workers {
        run.build.workers = w;
    }
    check_workers(run.build.workers)?;

    let corpus = load_corpus(&run.input, &run.ingest)?;
    let full = build_static(&corpus, &run.build);
    if full.edges.is_empty() {
        return Err(Error::NoEdges.into());
    }
    let mean = mean_edge_weight(&full).ok();
    let graph = threshold(&full, &run.build);

    let mut out = Artifacts::default();
    out.json(GRAPH_FILE, &graph)?;
    out.add("edges.csv", |b| export::write_edges_csv(&graph, b))?;
    out.add("nodes.csv", |b| export::write_nodes_csv(&graph, b))?;
    if run.build.retain_witnesses {
        out.add("witnesses.jsonl", |b| {
            export::write_witnesses_jsonl(&graph, b)
        })?;
    }
    let summary = BuildSummary {
        papers: corpus.papers().len(),
        authors: corpus.authors().len(),
        nodes_before_threshold: full.nodes.len(),
        edges_before_threshold: full.edges.len(),
        mean_weight: mean,
        mean_weight_value: mean.map(|m| m.value()),
        threshold_rule: run.build.threshold,
        threshold_used: graph.meta.threshold,
        nodes: graph.nodes.len(),
        edges: graph.edges.len(),
        witnesses_retained: run.build.retain_witnesses,
        ingest: corpus.stats(),
    };
    out.json("meta.json", &summary)?;
    out.json(CONFIG_FILE, &run)?;
    out.write(&args.out)?;
    Ok(format!(
        "{} papers, {} nodes, {} edges (mean weight {}, threshold {})\n",
        summary.papers,
        summary.nodes,
        summary.edges,
        summary
            .mean_weight_value
            .map_or("-".into(), |m| format!("{m:.3}")),
        run.build.threshold
    ))
}

fn load_built(dir: &Path) -> CliResult<(FosGraph, BuildRun)> {
    let graph: FosGraph = read_json(&dir.join(GRAPH_FILE))?;
    let run: BuildRun = read_json(&dir.join(CONFIG_FILE))?;
    Ok((graph, run))
}

fn resolve_seed(cli: Option<u64>, file: Option<u64>) -> CliResult<u64> {
    if let Some(s) = cli.or(file) {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::config(format!("{SEED_ENV}=`{v}` is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> CliResult<String> {
    let mut run: AnalyzeRun = read_config(args.config.as_deref())?;
    run.graph = args.graph.clone();
    if !args.analysis.is_empty() {
        run.analyses = args.analysis.clone();
    }
    if run.analyses.is_empty() {
        run.analyses = vec![Analysis::Centrality, Analysis::Communities, Analysis::Roles];
    }
    run.analyses.sort_by_key(|a| *a as u8);
    run.analyses.dedup();
    let seed = resolve_seed(args.seed, run.seed)?;
    run.seed = Some(seed);
    run.communities.seed = seed;
    run.roles.seed = seed;
    if let Some(r) = args.resolution {
        run.communities.resolution = r;
    }
    if let Some(m) = args.min_community {
        run.communities.min_size = m;
    }
    if let Some(c) = args.discipline_cutoff {
        run.discipline_cutoff = c;
    }
    let r = &mut run.roles;
    if let Some((lo, hi)) = args.k_range {
        r.k_min = lo;
        r.k_max = hi;
    }
    macro_rules! set {
        ($($field:ident <- $arg:ident),*) => { $(if let Some(v) = args.$arg { r.$field = v; })* };
    }
    set!(selection <- selection, dims <- dims, walks_per_node <- walks, walk_length <- walk_length,
         window <- window, epochs <- epochs, negative <- negative, sample <- sample, restarts <- restarts);
    if args.max_layer.is_some() {
        r.max_layer = args.max_layer;
    }
    r.distance.compress_sequences |= args.compress_sequences;
    r.distance.limit_pairs |= args.limit_pairs;
    if let Some(w) = args.workers {
        r.workers = w;
        run.centrality.workers = w;
    }
    check_workers(run.roles.workers)?;
    check_workers(run.centrality.workers)?;

    let (graph, build) = load_built(&args.graph)?;
    let corpus = load_corpus(&build.input, &build.ingest)?;
    let topology = graph.analysis_graph();
    let wants = |a: Analysis| run.analyses.contains(&a);
    let mut out = Artifacts::default();
    let mut stdout = String::new();

    let mut report: Option<CentralityReport> = None;
    if wants(Analysis::Centrality) || wants(Analysis::Roles) {
        let rep = centrality_report(&topology, &run.centrality)?;
        if wants(Analysis::Centrality) {
            out.add("centrality.csv", |b| export::write_centrality_csv(&rep, b))?;
            out.json("centrality.json", &rep)?;
        }
        report = Some(rep);
    }
    if wants(Analysis::Communities) {
        let assignment = louvain(&topology, &run.communities)?;
        let summary = summarize_communities(&assignment, &topology, &corpus, run.discipline_cutoff);
        out.add("communities.csv", |b| {
            export::write_assignment_csv(&assignment, b)
        })?;
        out.json("communities.json", &summary)?;
        let table = summary.to_table();
        stdout.push_str(&table);
        out.text("communities.txt", table);
    }
    if wants(Analysis::Roles) {
        let n = topology.node_count();
        if n >= 3 && run.roles.k_max > n - 1 {
            eprintln!(
                "note: k_max {} lowered to {} (node count - 1)",
                run.roles.k_max,
                n - 1
            );
            run.roles.k_max = n - 1;
        }
        let model = fit_roles(&topology, &run.roles)?;
        let summary = summarize_roles(
            &model.nodes,
            &model.labels,
            report.as_ref().expect("computed above"),
            &corpus,
        )?;
        out.add("embedding.csv", |b| export::write_embedding_csv(&model, b))?;
        out.add("roles.csv", |b| export::write_roles_csv(&model, b))?;
        out.add("silhouette.csv", |b| {
            export::write_silhouette_csv(&model, b)
        })?;
        out.add("stability.csv", |b| {
            export::write_stability_csv(&model.stability, b)
        })?;
        out.json(
            "role_summary.json",
            &RoleReport {
                k_selected: model.k_selected,
                max_layer: model.max_layer,
                params: &model.params,
                silhouette_curve: &model.silhouette_curve,
                roles: &summary.rows,
            },
        )?;
        let table = summary.to_table("focal");
        stdout.push_str(&format!("k = {}\n{table}", model.k_selected));
        out.text("role_summary.txt", table);
    }
    out.json(CONFIG_FILE, &run)?;
    out.write(&args.out)?;
    Ok(stdout)
}

#[derive(Serialize)]
struct RoleReport<'a> {
    k_selected: usize,
    max_layer: usize,
    params: &'a RoleParams,
    silhouette_curve: &'a [crate::roles::SilhouettePoint],
    roles: &'a [crate::roles::RoleRow],
}

fn cmd_temporal(args: TemporalArgs) -> CliResult<String> {
    let mut run: TemporalRun = read_config(args.config.as_deref())?;
    apply_ingest(&mut run.ingest, &mut run.input, &args.ingest)?;
    if let Some(s) = args.split {
        run.temporal.split = s;
    }
    run.temporal.retain_witnesses &= !args.no_witnesses;
    if let Some(w) = args.workers {
        run.temporal.workers = w;
    }
    check_workers(run.temporal.workers)?;
    if args.top_k.is_some() {
        run.top_k = args.top_k;
    }
    if args.restrict.is_some() {
        run.restrict = args.restrict.clone();
    }
    if let Some(m) = args.restrict_mode {
        run.restrict_mode = m;
    }

    let corpus = load_corpus(&run.input, &run.ingest)?;
    let mut graph = build_temporal(&corpus, &run.temporal)?;
    if let Some(field) = &run.restrict {
        graph = restrict_post_field(&graph, field, run.restrict_mode)?;
    }
    if let Some(k) = run.top_k {
        graph = top_k_edges(&graph, k)?;
    }
    let mut out = Artifacts::default();
    out.json(TEMPORAL_FILE, &graph)?;
    out.add("flows.csv", |b| export::write_flows_csv(&graph, b))?;
    out.add("flows.dot", |b| export::write_temporal_dot(&graph, b))?;
    if run.temporal.retain_witnesses {
        out.add("witnesses.jsonl", |b| {
            export::write_temporal_witnesses_jsonl(&graph, b)
        })?;
    }
    out.json(CONFIG_FILE, &run)?;
    out.write(&args.out)?;
    Ok(format!(
        "{} pre fields, {} post fields, {} edges ({})\n",
        graph.pre_nodes.len(),
        graph.post_nodes.len(),
        graph.edges.len(),
        run.temporal.split
    ))
}

enum Built {
    Static(FosGraph, IngestConfig, PathBuf),
    Temporal(TemporalFosGraph, IngestConfig, PathBuf),
}

fn load_any(dir: &Path) -> CliResult<Built> {
    if dir.join(TEMPORAL_FILE).exists() {
        let g: TemporalFosGraph = read_json(&dir.join(TEMPORAL_FILE))?;
        let run: TemporalRun = read_json(&dir.join(CONFIG_FILE))?;
        Ok(Built::Temporal(g, run.ingest, run.input))
    } else {
        let (g, run) = load_built(dir)?;
        Ok(Built::Static(g, run.ingest, run.input))
    }
}

#[derive(Serialize)]
struct DrillReport<'a> {
    provenance: &'a EdgeProvenance,
    keywords: Option<Vec<(String, usize)>>,
    subfields: Option<Vec<(String, usize)>>,
}

fn cmd_drill(args: DrillArgs) -> CliResult<String> {
    let (src, dst) = args
        .edge
        .split_once(',')
        .ok_or_else(|| CliError::config(format!("--edge `{}` (expected SRC,DST)", args.edge)))?;
    let stopwords = match &args.stopwords {
        Some(p) => Stopwords::from_file(p).map_err(|e| CliError::config(e.to_string()))?,
        None => Stopwords::default(),
    };
    let built = load_any(&args.graph)?;
    let (ingest, input) = match &built {
        Built::Static(_, i, p) | Built::Temporal(_, i, p) => (i, p),
    };
    // the window still applies, but finer levels stay visible for subfield counts
    let corpus = load_corpus(
        input,
        &IngestConfig {
            level: None,
            ..ingest.clone()
        },
    )?;
    let provenance = match &built {
        Built::Static(g, ..) => papers_for_edge(g, &corpus, src.trim(), dst.trim())?,
        Built::Temporal(g, ..) => papers_for_temporal_edge(g, src.trim(), dst.trim())?,
    };
    let keywords = args
        .keywords
        .map(|n| keyword_frequencies(&provenance.papers, &corpus, Some(n), &stopwords))
        .transpose()?;
    let subfields = args
        .subfields
        .map(|level| subfield_frequencies(&provenance.papers, &corpus, level))
        .transpose()?;

    let mut text = provenance.to_table(&corpus);
    let mut out = Artifacts::default();
    if let Some(kw) = &keywords {
        text.push_str("keywords:\n");
        for (term, count) in kw {
            text.push_str(&format!("  {count:>5}  {term}\n"));
        }
    }
    if let Some(sf) = &subfields {
        text.push_str("subfields:\n");
        for (name, count) in sf {
            text.push_str(&format!("  {count:>5}  {name}\n"));
        }
    }
    if let Some(dir) = &args.out {
        out.json(
            "drill.json",
            &DrillReport {
                provenance: &provenance,
                keywords,
                subfields,
            },
        )?;
        out.text("drill.txt", text.clone());
        out.write(dir)?;
    }
    Ok(text)
}

fn cmd_export(args: ExportArgs) -> CliResult<String> {
    let built = load_any(&args.graph)?;
    let mut buf = Vec::new();
    match (&built, args.format) {
        (Built::Static(g, ..), Format::Graphml) => export::write_graphml(g, &mut buf)?,
        (Built::Static(g, ..), Format::Dot) => export::write_dot(g, &mut buf)?,
        (Built::Static(g, ..), Format::Csv) => export::write_edges_csv(g, &mut buf)?,
        (Built::Static(g, ..), Format::Jsonl) => export::write_witnesses_jsonl(g, &mut buf)?,
        (Built::Temporal(g, ..), Format::Dot) => export::write_temporal_dot(g, &mut buf)?,
        (Built::Temporal(g, ..), Format::Csv) => export::write_flows_csv(g, &mut buf)?,
        (Built::Temporal(g, ..), Format::Jsonl) => {
            export::write_temporal_witnesses_jsonl(g, &mut buf)?
        }
        (Built::Temporal(..), Format::Graphml) => {
            return Err(CliError::config(
                "GraphML export is only available for static graphs",
            ))
        }
    }
    if let Some(parent) = args.out.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    fs::write(&args.out, buf).map_err(|e| Error::io(&args.out, e))?;
    Ok(String::new())
}

/// Runs one command and returns the text to print on success.
pub fn execute(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Build(a) => cmd_build(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Temporal(a) => cmd_temporal(a),
        Command::Drill(a) => cmd_drill(a),
        Command::Export(a) => cmd_export(a),
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
