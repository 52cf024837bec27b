//! Walk ancestor closures and build induced concept trees, including the
//! diamond case where two paths meet at a shared ancestor.
//!
//! ```bash
//! cargo run -p concept-flow --example ancestor_traversal
//! ```

use std::collections::BTreeSet;

use concept_flow::ingest::{build_raw_graph, parse_category_links, parse_page_records, FilterRules};
use concept_flow::ontology::{distill, ConceptKind};

const PAGES: &str = include_str!("data/mini_pages.tsv");
const CATLINKS: &str = include_str!("data/mini_catlinks.tsv");

fn main() -> concept_flow::Result<()> {
    let (pages, _) = parse_page_records(PAGES.as_bytes())?;
    let (links, _) = parse_category_links(CATLINKS.as_bytes())?;
    let (raw, _) = build_raw_graph(pages, &links);
    let ontology = distill(&raw, &FilterRules::default(), "Main Topic Classifications")?;

    let titles = |ids: &BTreeSet<_>| {
        ids.iter()
            .map(|&id| ontology.title(id).unwrap_or("?"))
            .collect::<Vec<_>>()
            .join(", ")
    };

    // "Big Pharma" sits under both Drugs and Economics: a diamond meeting at
    // the root. Each ancestor appears once.
    let big_pharma = ontology.lookup(ConceptKind::Leaf, "Big Pharma").unwrap();
    for depth in [Some(1), Some(2), None] {
        let ancestors = ontology.ancestors(big_pharma, depth)?;
        let label = depth.map_or("unbounded".to_string(), |d| d.to_string());
        println!("ancestors(Big Pharma, depth {label:<9}) = {{{}}}", titles(&ancestors));
    }

    // The induced concept tree of a sentence mentioning two leaves is the
    // union of both closures, leaves included.
    let aspirin = ontology.lookup(ConceptKind::Leaf, "Aspirin").unwrap();
    let economy = ontology.lookup(ConceptKind::Leaf, "Economy").unwrap();
    let tree = ontology.induced_concept_tree(&BTreeSet::from([aspirin, economy]), None)?;
    println!("\nconcept tree for {{Aspirin, Economy}}:");
    println!("  {{{}}}", titles(&tree.concepts));

    let empty = ontology.induced_concept_tree(&BTreeSet::new(), None)?;
    assert!(empty.is_empty());
    println!("\nempty leaf set gives the empty tree");
    Ok(())
}
