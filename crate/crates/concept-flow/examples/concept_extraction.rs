//! Segment a transcript, build the surface-form index over article titles,
//! and detect concept mentions by greedy longest-match scanning.
//!
//! ```bash
//! cargo run -p concept-flow --example concept_extraction
//! ```

use concept_flow::extract::{
    annotate_transcript, build_surface_index, default_stop_titles, parse_utterances,
    segment_transcript,
};
use concept_flow::ingest::{build_raw_graph, parse_category_links, parse_page_records, FilterRules};
use concept_flow::ontology::distill;

const PAGES: &str = include_str!("data/mini_pages.tsv");
const CATLINKS: &str = include_str!("data/mini_catlinks.tsv");
const DEBATE: &str = include_str!("data/debate.jsonl");

fn main() -> concept_flow::Result<()> {
    let (pages, _) = parse_page_records(PAGES.as_bytes())?;
    let (links, _) = parse_category_links(CATLINKS.as_bytes())?;
    let (raw, _) = build_raw_graph(pages, &links);
    let ontology = distill(&raw, &FilterRules::default(), "Main Topic Classifications")?;

    let index = build_surface_index(&ontology, 1, &default_stop_titles());
    println!(
        "indexed {} surface forms (max pattern length {} tokens)\n",
        index.len(),
        index.max_pattern_tokens()
    );

    let utterances = parse_utterances(DEBATE.as_bytes())?;
    let mut transcript = segment_transcript(&utterances, "debate")?;
    annotate_transcript(&mut transcript, &index);

    for sentence in &transcript.sentences {
        println!("[{:>2}] {:<9} {}", sentence.index, sentence.speaker, sentence.text);
        for mention in &sentence.mentions {
            println!(
                "       -> {:?} spans tokens {}..{} (leaf {})",
                ontology.title(mention.leaf).unwrap_or("?"),
                mention.token_span.0,
                mention.token_span.1,
                mention.leaf
            );
        }
    }

    // "Food and Drug Administration" outranks any shorter prefix of itself:
    // longest match wins and matches never overlap.
    let fda_sentence = &transcript.sentences[9];
    assert!(fda_sentence
        .mentions
        .iter()
        .any(|m| m.surface == "food and drug administration"));
    Ok(())
}
