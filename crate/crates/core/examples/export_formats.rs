//! Writes one network in every export format to a directory.
//!
//! `cargo run --example export_formats -- OUT_DIR`

use std::fs::File;
use std::path::{Path, PathBuf};

use fosnet::builder::{build_static, threshold, BuildConfig, Threshold};
use fosnet::corpus::{load_corpus, IngestConfig};
use fosnet::export;
use fosnet::temporal::{build_temporal, TemporalConfig};

fn create(dir: &Path, name: &str) -> fosnet::Result<File> {
    let path = dir.join(name);
    File::create(&path).map_err(|source| fosnet::Error::Io { path, source })
}

fn main() -> fosnet::Result<()> {
    let dir: PathBuf = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "fosnet-export".into())
        .into();
    std::fs::create_dir_all(&dir).map_err(|source| fosnet::Error::Io {
        path: dir.clone(),
        source,
    })?;
    let corpus = load_corpus(
        concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/small_corpus.jsonl"),
        &IngestConfig {
            level: Some(1),
            ..Default::default()
        },
    )?;
    let config = BuildConfig {
        threshold: Threshold::Fixed(2.0),
        ..Default::default()
    };
    let graph = threshold(&build_static(&corpus, &config), &config);
    export::write_edges_csv(&graph, create(&dir, "edges.csv")?)?;
    export::write_nodes_csv(&graph, create(&dir, "nodes.csv")?)?;
    export::write_witnesses_jsonl(&graph, create(&dir, "witnesses.jsonl")?)?;
    export::write_graphml(&graph, create(&dir, "graph.graphml")?)?;
    export::write_dot(&graph, create(&dir, "graph.dot")?)?;

    let flows = build_temporal(&corpus, &TemporalConfig::default())?;
    export::write_flows_csv(&flows, create(&dir, "flows.csv")?)?;
    export::write_temporal_dot(&flows, create(&dir, "flows.dot")?)?;
    println!("wrote {}", dir.display());
    Ok(())
}
