//! Compute binary TF-IDF feature vectors over concepts and words and score
//! every sentence pair with the joint cosine similarity.
//!
//! ```bash
//! cargo run -p concept-flow --example sentence_similarity
//! ```

use concept_flow::extract::{
    annotate_transcript, build_surface_index, concept_tree_for_sentence, default_stop_titles,
    parse_utterances, segment_transcript,
};
use concept_flow::ingest::{build_raw_graph, parse_category_links, parse_page_records, FilterRules};
use concept_flow::ontology::distill;
use concept_flow::similarity::{sentence_similarity, write_vector_dump, CorpusVectors};

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

    let n = transcript.sentences.len();
    println!("joint similarity sim(i,j) = cos(V_i,V_j) + cos(U_i,U_j), range [0,2]:\n");
    print!("     ");
    for j in 0..n {
        print!("{j:>6}");
    }
    println!();
    for i in 0..n {
        print!("[{i:>2}] ");
        for j in 0..n {
            let sim = sentence_similarity(i, j, &vectors.concept, &vectors.word)?;
            print!("{sim:>6.3}");
        }
        println!();
    }

    // A word present in every sentence carries the floor weight 1; rarer
    // dimensions weigh 1 + ln(N/df).
    println!("\nconcept-vector dump for the first three sentences (index, key, weight):");
    let mut dump = Vec::new();
    write_vector_dump(&vectors.concept[..3], &mut dump).expect("write to vec");
    print!("{}", String::from_utf8(dump).unwrap());
    Ok(())
}
