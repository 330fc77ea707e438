//! Structural roles: struc2vec embedding, k chosen at the silhouette knee,
//! and the per-role centrality table.
//!
//! `cargo run --release --example roles -- [CORPUS.jsonl] [SEED]`

use fosnet::builder::{build_static, threshold, BuildConfig, FocalRule, Threshold};
use fosnet::centrality::{centrality_report, CentralityParams};
use fosnet::corpus::{load_corpus, IngestConfig};
use fosnet::roles::{fit_roles, summarize_roles, RoleParams};

fn main() -> fosnet::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| {
        concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/fixtures/synthetic_corpus.jsonl"
        )
        .into()
    });
    let seed = args
        .next()
        .map_or(42, |s| s.parse().expect("seed must be an integer"));
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
    let report = centrality_report(&graph, &CentralityParams::default())?;

    let params = RoleParams {
        seed,
        k_max: RoleParams::default().k_max.min(graph.node_count() - 1),
        ..Default::default()
    };
    let model = fit_roles(&graph, &params)?;
    let curve: Vec<String> = model
        .silhouette_curve
        .iter()
        .map(|p| format!("{}:{:.2}", p.k, p.silhouette))
        .collect();
    println!("silhouette {}", curve.join(" "));
    println!("k = {} (max layer {})", model.k_selected, model.max_layer);
    let summary = summarize_roles(&model.nodes, &model.labels, &report, &corpus)?;
    print!("{}", summary.to_table("focal"));
    for row in &summary.rows {
        let members: Vec<&str> = model
            .nodes
            .iter()
            .zip(&model.labels)
            .filter(|(_, &l)| l == row.role)
            .map(|(n, _)| corpus.field_name(n))
            .take(4)
            .collect();
        println!(
            "#{}: {}{}",
            row.role + 1,
            members.join(", "),
            if row.count > 4 { ", ..." } else { "" }
        );
    }
    Ok(())
}
