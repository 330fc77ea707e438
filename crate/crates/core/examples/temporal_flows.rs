//! Directed flows from background-period fields into focal-period fields.
//!
//! `cargo run --example temporal_flows -- [CORPUS.jsonl] [K]`

use fosnet::corpus::{load_corpus, IngestConfig};
use fosnet::temporal::{build_temporal, top_k_edges, SplitRule, TemporalConfig};

fn main() -> fosnet::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| {
        concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/fixtures/synthetic_corpus.jsonl"
        )
        .into()
    });
    let k = args
        .next()
        .map_or(10, |s| s.parse().expect("K must be an integer"));
    let corpus = load_corpus(
        &path,
        &IngestConfig {
            level: Some(1),
            ..Default::default()
        },
    )?;
    let graph = build_temporal(
        &corpus,
        &TemporalConfig {
            split: SplitRule::Focal { pre_window: None },
            ..Default::default()
        },
    )?;
    let top = top_k_edges(&graph, k)?;
    println!(
        "{} flows between {} pre and {} post fields; heaviest {}:",
        graph.edges.len(),
        graph.pre_nodes.len(),
        graph.post_nodes.len(),
        top.edges.len()
    );
    let mut flows: Vec<_> = top.edges.iter().collect();
    flows.sort_by_key(|e| std::cmp::Reverse(e.1.weight));
    for ((src, dst), e) in flows {
        println!("  {:>3}  {} -> {}", e.weight, top.name(src), top.name(dst));
    }
    Ok(())
}
