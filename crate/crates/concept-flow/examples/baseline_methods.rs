//! Score the same sentence pairs under all four similarity methods: the
//! joint word+concept model, its text-only variant, word overlap, and
//! averaged word embeddings.
//!
//! ```bash
//! cargo run -p concept-flow --example baseline_methods
//! ```

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

    let (embeddings, stats) = load_embeddings(GLOVE.as_bytes())?;
    println!(
        "loaded {} embedding vectors of dimension {} ({} lines skipped)\n",
        embeddings.len(),
        embeddings.dimension(),
        stats.skipped_lines
    );

    // The two FDA sentences against the generic "what is wrong" sentence.
    let pairs = [(3usize, 4usize), (3, 2), (0, 9), (5, 6)];
    print!("{:>6} {:>6}", "i", "j");
    for method in ALL_METHODS {
        print!("{:>15}", method.to_string());
    }
    println!();
    for (i, j) in pairs {
        print!("{i:>6} {j:>6}");
        for method in ALL_METHODS {
            let scorer = MethodScorer::new(method, &vectors, &token_lists, Some(&embeddings))?;
            print!("{:>15.4}", scorer.score(i, j)?);
        }
        println!();
    }

    println!("\nsentences:");
    for (i, j) in pairs {
        for k in [i, j] {
            println!("  [{k:>2}] {}", transcript.sentences[k].text);
        }
    }
    Ok(())
}
