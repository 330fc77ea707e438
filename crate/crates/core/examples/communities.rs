//! Louvain communities with their size, density, central members and disciplines.
//!
//! `cargo run --example communities -- [CORPUS.jsonl] [RESOLUTION]`

use fosnet::builder::{build_static, threshold, BuildConfig, FocalRule, Threshold};
use fosnet::community::{louvain, summarize_communities, LouvainConfig};
use fosnet::corpus::{load_corpus, IngestConfig};

fn main() -> fosnet::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| {
        concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/fixtures/synthetic_corpus.jsonl"
        )
        .into()
    });
    let resolution = args
        .next()
        .map_or(1.0, |s| s.parse().expect("resolution must be a number"));
    let corpus = load_corpus(
        &path,
        &IngestConfig {
            level: Some(1),
            ..Default::default()
        },
    )?;
    let config = BuildConfig {
        focal: FocalRule::Any,
        threshold: Threshold::Mean,
        ..Default::default()
    };
    let graph = threshold(&build_static(&corpus, &config), &config).analysis_graph();
    let assignment = louvain(
        &graph,
        &LouvainConfig {
            resolution,
            ..Default::default()
        },
    )?;
    // disciplines come from the level-0 parents in the catalogue
    print!(
        "{}",
        summarize_communities(&assignment, &graph, &corpus, 0.2).to_table()
    );
    Ok(())
}
