//! Distill Wikipedia's category hierarchy into a concept ontology, detect
//! concept mentions in group-discussion transcripts, score sentence pairs
//! with a joint word+concept TF-IDF cosine similarity, and export
//! concept-flow graphs for visualization.
//!
//! The pipeline runs in stages, each usable on its own:
//!
//! 1. [`ingest`] — parse raw `pages.tsv` / `catlinks.tsv` records and
//!    classify category titles (maintenance, tracking, chronological,
//!    list-like, topical).
//! 2. [`ontology`] — distill the filtered graph rooted at the main-topic
//!    category, query ancestor closures, persist and reload it.
//! 3. [`extract`] — segment speaker-attributed transcripts into sentences,
//!    tokenize, and detect concept mentions by longest-match surface-form
//!    scanning against article titles.
//! 4. [`similarity`] — binary TF-IDF feature vectors over concepts and
//!    words, their joint cosine, and the word-overlap / text-only /
//!    averaged-embedding baselines.
//! 5. [`flow`] — link each sentence to its most similar later sentence and
//!    export the flow as DOT or JSON.
//! 6. [`cli`] — the `concept-flow` binary wiring the stages into
//!    subcommands (`distill`, `flow`, `similar`, `eval-pairs`, `stats`).
//!
//! ## Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run -p concept-flow --example classify_categories   # filter rules
//! cargo run -p concept-flow --example distill_ontology      # distillation + save/load
//! cargo run -p concept-flow --example ancestor_traversal    # ancestor closures, concept trees
//! cargo run -p concept-flow --example concept_extraction    # surface-form matching
//! cargo run -p concept-flow --example sentence_similarity   # TF-IDF vectors and joint cosine
//! cargo run -p concept-flow --example baseline_methods      # the four similarity methods
//! cargo run -p concept-flow --example flow_graph            # flow construction, DOT + JSON
//! cargo run -p concept-flow --example annotation_sheet      # seeded evaluation sheets
//! ```
//!
//! ## Quick start
//!
//! ```
//! use concept_flow::{extract, flow, ingest, ontology, similarity};
//!
//! # fn main() -> concept_flow::Result<()> {
//! // A two-category mini wiki with one article.
//! let pages = "\
//! 1\tcategory\tMain Topic Classifications\n\
//! 2\tcategory\tHealth\n\
//! 3\tarticle\tAspirin\n";
//! let links = "\
//! Health\tcategory\tMain Topic Classifications\n\
//! Aspirin\tarticle\tHealth\n";
//! let (pages, _) = ingest::parse_page_records(pages.as_bytes())?;
//! let (links, _) = ingest::parse_category_links(links.as_bytes())?;
//! let (raw, _) = ingest::build_raw_graph(pages, &links);
//! let ontology = ontology::distill(
//!     &raw,
//!     &ingest::FilterRules::default(),
//!     "Main Topic Classifications",
//! )?;
//!
//! // Detect the mention and build the flow for a tiny transcript.
//! let index = extract::build_surface_index(&ontology, 1, &extract::default_stop_titles());
//! let utterances = vec![
//!     ("A".to_string(), "Aspirin is cheap.".to_string()),
//!     ("B".to_string(), "Aspirin also works.".to_string()),
//! ];
//! let mut transcript = extract::segment_transcript(&utterances, "demo")?;
//! extract::annotate_transcript(&mut transcript, &index);
//!
//! let trees: Vec<_> = transcript
//!     .sentences
//!     .iter()
//!     .map(|s| extract::concept_tree_for_sentence(&s.mentions, &ontology, None))
//!     .collect::<concept_flow::Result<_>>()?;
//! let token_lists: Vec<_> = transcript.sentences.iter().map(|s| s.tokens.clone()).collect();
//! let vectors = similarity::CorpusVectors::build(&trees, &token_lists)?;
//! let scorer = similarity::MethodScorer::new(
//!     similarity::SimilarityMethod::ConceptJoint,
//!     &vectors,
//!     &token_lists,
//!     None,
//! )?;
//! let graph = flow::build_flow(&transcript, &scorer, &ontology, &flow::FlowOptions::default())?;
//! assert_eq!(graph.edges.len(), 1);
//! println!("{}", flow::export_dot(&graph));
//! # Ok(())
//! # }
//! ```

pub mod cli;
pub mod error;
pub mod extract;
pub mod flow;
pub mod ingest;
pub mod ontology;
pub mod similarity;

pub use error::{Error, Result};
