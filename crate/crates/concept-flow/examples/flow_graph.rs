//! The whole pipeline: distill the ontology, extract concepts from a debate
//! transcript, link each sentence to its most similar later sentence, rank
//! the important concepts, and export the flow as DOT and JSON.
//!
//! ```bash
//! cargo run -p concept-flow --example flow_graph
//! cargo run -p concept-flow --example flow_graph | dot -Tsvg > flow.svg
//! ```

use concept_flow::extract::{
    annotate_transcript, build_surface_index, concept_tree_for_sentence, default_stop_titles,
    parse_utterances, segment_transcript,
};
use concept_flow::flow::{build_flow, export_dot, export_json, rank_concepts, FlowOptions};
use concept_flow::ingest::{build_raw_graph, parse_category_links, parse_page_records, FilterRules};
use concept_flow::ontology::distill;
use concept_flow::similarity::{CorpusVectors, MethodScorer, SimilarityMethod};

const PAGES: &str = include_str!("data/mini_pages.tsv");
const CATLINKS: &str = include_str!("data/mini_catlinks.tsv");
const DEBATE: &str = include_str!("data/debate.jsonl");

fn main() -> concept_flow::Result<()> {
    let (pages, _) = parse_page_records(PAGES.as_bytes())?;
    let (links, _) = parse_category_links(CATLINKS.as_bytes())?;
    let (raw, _) = build_raw_graph(pages, &links);
    let ontology = distill(&raw, &FilterRules::default(), "Main Topic Classifications")?;
    let index = build_surface_index(&ontology, 1, &default_stop_titles());

    let utterances = parse_utterances(DEBATE.as_bytes())?;
    let mut transcript = segment_transcript(&utterances, "debate")?;
    annotate_transcript(&mut transcript, &index);
    let trees = transcript
        .sentences
        .iter()
        .map(|s| concept_tree_for_sentence(&s.mentions, &ontology, None))
        .collect::<concept_flow::Result<Vec<_>>>()?;
    let token_lists: Vec<Vec<String>> = transcript
        .sentences
        .iter()
        .map(|s| s.tokens.clone())
        .collect();
    let vectors = CorpusVectors::build(&trees, &token_lists)?;
    let scorer = MethodScorer::new(SimilarityMethod::ConceptJoint, &vectors, &token_lists, None)?;

    let flow = build_flow(&transcript, &scorer, &ontology, &FlowOptions::default())?;

    eprintln!("flow for {:?}: {} nodes, {} edges", flow.transcript_id, flow.nodes.len(), flow.edges.len());
    for edge in &flow.edges {
        let shared = edge
            .shared_concepts
            .first()
            .map(|c| c.title.as_str())
            .unwrap_or("-");
        eprintln!(
            "  {} -> {}  score {:.3}  top shared concept: {}",
            edge.from, edge.to, edge.score, shared
        );
    }

    eprintln!("\nmost important concepts (sum of weights over sentences):");
    for item in rank_concepts(&vectors.concept, 5) {
        eprintln!(
            "  {:<30} {:.3}",
            ontology.title(item.concept).unwrap_or("?"),
            item.score
        );
    }

    // DOT on stdout so the output pipes straight into graphviz.
    print!("{}", export_dot(&flow));
    eprintln!("\nJSON export:\n{}", export_json(&flow));
    Ok(())
}
