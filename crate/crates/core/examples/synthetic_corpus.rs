//! Writes the planted synthetic corpus as JSONL.
//!
//! `cargo run --example synthetic_corpus -- [OUT] [SEED]`; without arguments
//! it prints a summary of the corpus that ships in `fixtures/`.

use std::collections::BTreeMap;

use fosnet::corpus::{write_records, Corpus, IngestConfig};
use fosnet::synthetic::{generate, planted_edges, planted_fields, SyntheticConfig};

fn main() -> fosnet::Result<()> {
    let mut args = std::env::args().skip(1);
    let out = args.next();
    let seed = args
        .next()
        .map_or(42, |s| s.parse().expect("seed must be an integer"));
    let records = generate(&SyntheticConfig {
        seed,
        ..Default::default()
    });

    let mut kinds = BTreeMap::new();
    for f in planted_fields() {
        *kinds.entry(format!("{:?}", f.kind)).or_insert(0) += 1;
    }
    let corpus = Corpus::from_records(records.clone(), &IngestConfig::default())?;
    println!(
        "{} papers, {} authors, {} planted edges, planted fields {:?}",
        corpus.papers().len(),
        corpus.authors().len(),
        planted_edges().len(),
        kinds
    );

    if let Some(path) = out {
        let mut file = std::fs::File::create(&path).map_err(|e| fosnet::Error::Io {
            path: path.clone().into(),
            source: e,
        })?;
        write_records(&mut file, &records)?;
        println!("wrote {path}");
    }
    Ok(())
}
