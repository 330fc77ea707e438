//! Degree, betweenness, closeness and eigenvector centrality of a field network.
//!
//! `cargo run --example centrality -- [CORPUS.jsonl]`

use fosnet::builder::{build_static, threshold, BuildConfig, FocalRule, Threshold};
use fosnet::centrality::{centrality_report, CentralityParams};
use fosnet::corpus::{load_corpus, IngestConfig};

fn main() -> fosnet::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/fixtures/synthetic_corpus.jsonl"
        )
        .into()
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
    let graph = threshold(&build_static(&corpus, &config), &config);
    let report = centrality_report(&graph.analysis_graph(), &CentralityParams::default())?;

    let mut nodes = report.nodes.clone();
    nodes.sort_by(|a, b| {
        b.betweenness
            .total_cmp(&a.betweenness)
            .then(a.node.cmp(&b.node))
    });
    println!("{}", report.conventions);
    println!(
        "{:<30} {:>6} {:>8} {:>9} {:>11}",
        "field", "degree", "betw.", "closeness", "eigenvector"
    );
    for c in nodes.iter().take(12) {
        println!(
            "{:<30} {:>6} {:>8.3} {:>9.3} {:>11.3}",
            graph.name(&c.node),
            c.degree,
            c.betweenness,
            c.closeness,
            c.eigenvector
        );
    }
    Ok(())
}
