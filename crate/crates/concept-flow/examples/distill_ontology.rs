//! Distill a mini wiki into a concept ontology, print its statistics, and
//! round-trip it through the on-disk directory format.
//!
//! ```bash
//! cargo run -p concept-flow --example distill_ontology
//! ```

use concept_flow::ingest::{build_raw_graph, parse_category_links, parse_page_records, FilterRules};
use concept_flow::ontology::{distill, load_ontology, save_ontology};

const PAGES: &str = include_str!("data/mini_pages.tsv");
const CATLINKS: &str = include_str!("data/mini_catlinks.tsv");

fn main() -> concept_flow::Result<()> {
    let (pages, page_stats) = parse_page_records(PAGES.as_bytes())?;
    let (links, link_stats) = parse_category_links(CATLINKS.as_bytes())?;
    println!(
        "parsed {} pages and {} links ({} malformed)",
        page_stats.parsed,
        link_stats.parsed,
        page_stats.malformed + link_stats.malformed
    );

    let (raw, build_stats) = build_raw_graph(pages, &links);
    println!(
        "raw graph: {} pages, {} resolved edges, {} dangling links",
        raw.pages.len(),
        raw.edges.len(),
        build_stats.dangling_links
    );

    let ontology = distill(&raw, &FilterRules::default(), "Main Topic Classifications")?;
    println!(
        "\ndistilled: {}",
        serde_json::to_string(&ontology.stats()).unwrap()
    );
    println!("\nsurviving nodes (root first, then title order):");
    for node in ontology.nodes() {
        println!("  {:>2}  {:<8}  {}", node.id, node.kind.to_string(), node.title);
    }

    // The maintenance/tracking/chronological/list categories and everything
    // orphaned by their removal are gone.
    assert!(ontology.nodes().all(|n| n.title != "1880 deaths"));
    assert!(ontology.nodes().all(|n| n.title != "Articles to be split"));

    let dir = tempfile::tempdir().expect("temp dir");
    save_ontology(&ontology, dir.path())?;
    let reloaded = load_ontology(dir.path())?;
    assert_eq!(ontology, reloaded);
    println!("\nsave/load round trip at {} is the identity", dir.path().display());
    Ok(())
}
