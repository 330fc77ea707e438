//! From an edge back to its authors, papers, keywords and finer fields.
//!
//! `cargo run --example drill_down -- [SRC] [DST]`

use fosnet::builder::{build_static, BuildConfig};
use fosnet::closeread::{keyword_frequencies, papers_for_edge, subfield_frequencies, Stopwords};
use fosnet::corpus::{load_corpus, IngestConfig};

fn main() -> fosnet::Result<()> {
    let mut args = std::env::args().skip(1);
    let src = args.next().unwrap_or_else(|| "Graph theory".into());
    let dst = args.next().unwrap_or_else(|| "Optimization".into());
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/small_corpus.jsonl");

    // the network is built on level-1 fields, but drill-down reads the full corpus
    let corpus = load_corpus(path, &IngestConfig::default())?;
    let graph = build_static(&corpus.filter_fields(1), &BuildConfig::default());

    let provenance = match papers_for_edge(&graph, &corpus, &src, &dst) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(3);
        }
    };
    print!("{}", provenance.to_table(&corpus));
    println!("keywords:");
    for (term, count) in
        keyword_frequencies(&provenance.papers, &corpus, Some(8), &Stopwords::default())?
    {
        println!("  {count:>3}  {term}");
    }
    println!("level-2 fields:");
    for (name, count) in subfield_frequencies(&provenance.papers, &corpus, 2)? {
        println!("  {count:>3}  {name}");
    }
    Ok(())
}
