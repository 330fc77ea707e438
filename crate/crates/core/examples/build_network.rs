//! Static field network from a corpus: projection, focal rule, mean threshold.
//!
//! `cargo run --example build_network -- [CORPUS.jsonl]`

use fosnet::builder::{
    build_static, mean_edge_weight, threshold, BuildConfig, FocalRule, Threshold,
};
use fosnet::corpus::{load_corpus, IngestConfig};

fn main() -> fosnet::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/small_corpus.jsonl").into()
    });
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
    let full = build_static(&corpus, &config);
    let mean = mean_edge_weight(&full)?;
    let kept = threshold(&full, &config);
    println!(
        "{} papers -> {} fields, {} edges; mean weight {:.3}; {} edges at or above it",
        corpus.papers().len(),
        full.nodes.len(),
        full.edges.len(),
        mean.value(),
        kept.edges.len()
    );
    for ((a, b), e) in &kept.edges {
        let authors: Vec<&str> = e
            .witnesses
            .iter()
            .flat_map(|w| w.keys())
            .map(String::as_str)
            .collect();
        println!(
            "  {:<28} {:<28} {:>3}  {}",
            kept.name(a),
            kept.name(b),
            e.weight,
            authors.join(" ")
        );
    }
    Ok(())
}
