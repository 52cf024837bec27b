//! Reproduce the evaluation harness: sample anchor sentences with a seeded
//! generator, retrieve each anchor's best match under every method, and emit
//! the annotation sheet for human raters (rating column left blank).
//!
//! ```bash
//! cargo run -p concept-flow --example annotation_sheet
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use concept_flow::cli::sample_indices;
use concept_flow::extract::{
    annotate_transcript, build_surface_index, concept_tree_for_sentence, default_stop_titles,
    parse_utterances, segment_transcript,
};
use concept_flow::ingest::{build_raw_graph, parse_category_links, parse_page_records, FilterRules};
use concept_flow::ontology::distill;
use concept_flow::similarity::{load_embeddings, CorpusVectors, MethodScorer, ALL_METHODS};

const PAGES: &str = include_str!("data/mini_pages.tsv");
const CATLINKS: &str = include_str!("data/mini_catlinks.tsv");
const DEBATE: &str = include_str!("data/debate.jsonl");
const GLOVE: &str = include_str!("data/mini_glove.txt");

const SEED: u64 = 42;
const SAMPLE_SIZE: usize = 5;

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
    let (embeddings, _) = load_embeddings(GLOVE.as_bytes())?;

    // The same seed always selects the same anchors.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let n = transcript.sentences.len();
    let anchors = sample_indices(n, SAMPLE_SIZE, &mut rng);
    eprintln!("seed {SEED} sampled anchors {anchors:?} out of {n} sentences\n");

    println!("debate_id\tmethod\tanchor_index\tanchor_text\tmatch_index\tmatch_text\trating");
    for &anchor in &anchors {
        for method in ALL_METHODS {
            let scorer = MethodScorer::new(method, &vectors, &token_lists, Some(&embeddings))?;
            // Retrieval is over all other sentences, both directions.
            let mut best: Option<(usize, f64)> = None;
            for candidate in 0..n {
                if candidate == anchor {
                    continue;
                }
                let score = scorer.score(anchor, candidate)?;
                if best.is_none_or(|(_, s)| score > s) {
                    best = Some((candidate, score));
                }
            }
            let matched = best.filter(|&(_, s)| s > 0.0).map(|(j, _)| j);
            let (match_index, match_text) = match matched {
                Some(j) => (j.to_string(), transcript.sentences[j].text.clone()),
                None => (String::new(), String::new()),
            };
            println!(
                "{}\t{}\t{}\t{}\t{}\t{}\t",
                transcript.id,
                method,
                anchor,
                transcript.sentences[anchor].text,
                match_index,
                match_text,
            );
        }
    }
    Ok(())
}
